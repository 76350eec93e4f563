//! Oracle-mediated adaptive query strategies: star-count degree decoding,
//! family encoding into one composite graph, the parametric three-query
//! isomorphism strategy, graph reconstruction, and forbidden-subgraph
//! membership.
//!
//! Encoded composites explode combinatorially, so their counts are carried
//! in factored form (prime -> exponent); exponents stay exact big integers
//! even when the decimal expansion of the count could never be written out.

use std::collections::BTreeMap;
use std::io::{BufRead, BufReader, Write};
use std::process::{Child, ChildStdin, ChildStdout, Command, Stdio};

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::canon::canonical_form;
use crate::count::{count, CountKind, Orientation};
use crate::enumerate::{enumerate_all_upto, enumerate_graphs};
use crate::error::{HomError, Result};
use crate::graph::Graph;
use crate::graph6;
use crate::linalg::{RationalMatrix, SolveOutcome};

// ---------------------------------------------------------------------------
// factored counts

const FACTOR_VALUE_CAP: u64 = 1_000_000_000_000;
const MATERIALIZE_BIT_CAP: u64 = 1 << 24;

/// A natural number as a prime-exponent map. `zero` flags the value 0;
/// an empty map is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredCount {
    zero: bool,
    factors: BTreeMap<u64, BigUint>,
}

impl FactoredCount {
    pub fn zero() -> Self {
        FactoredCount {
            zero: true,
            factors: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        FactoredCount {
            zero: false,
            factors: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    pub fn is_one(&self) -> bool {
        !self.zero && self.factors.is_empty()
    }

    pub fn exponents(&self) -> &BTreeMap<u64, BigUint> {
        &self.factors
    }

    /// Trial-division factorization; counts in this crate's encodings stay
    /// far below the cap.
    pub fn from_value(v: &BigUint) -> Result<Self> {
        if v.is_zero() {
            return Ok(Self::zero());
        }
        let Some(mut x) = v.to_u64() else {
            return Err(HomError::Invalid(
                "count too large for exact factorization".into(),
            ));
        };
        if x > FACTOR_VALUE_CAP {
            return Err(HomError::Invalid(
                "count too large for exact factorization".into(),
            ));
        }
        let mut factors = BTreeMap::new();
        let mut d = 2u64;
        while d * d <= x {
            while x % d == 0 {
                *factors.entry(d).or_insert_with(BigUint::zero) += 1u32;
                x /= d;
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if x > 1 {
            *factors.entry(x).or_insert_with(BigUint::zero) += 1u32;
        }
        Ok(FactoredCount {
            zero: false,
            factors,
        })
    }

    pub fn mul(&mut self, other: &Self) {
        if self.zero || other.zero {
            *self = Self::zero();
            return;
        }
        for (p, e) in &other.factors {
            *self.factors.entry(*p).or_insert_with(BigUint::zero) += e;
        }
    }

    pub fn pow_big(&mut self, e: &BigUint) {
        if e.is_zero() {
            *self = Self::one();
            return;
        }
        if self.zero {
            return;
        }
        for v in self.factors.values_mut() {
            *v = &*v * e;
        }
    }

    fn bit_estimate(&self) -> u64 {
        self.factors
            .iter()
            .map(|(p, e)| e.to_u64().unwrap_or(u64::MAX).saturating_mul(64 - p.leading_zeros() as u64))
            .fold(0u64, u64::saturating_add)
    }

    /// Expands to a plain integer; refuses astronomically large values.
    pub fn to_value(&self) -> Result<BigUint> {
        if self.zero {
            return Ok(BigUint::zero());
        }
        if self.bit_estimate() > MATERIALIZE_BIT_CAP {
            return Err(HomError::Budget(
                "factored count too large to expand into decimal form".into(),
            ));
        }
        let mut acc = BigUint::one();
        for (p, e) in &self.factors {
            let exp = e
                .to_u32()
                .ok_or_else(|| HomError::Budget("exponent exceeds expansion cap".into()))?;
            acc *= BigUint::from(*p).pow(exp);
        }
        Ok(acc)
    }
}

// ---------------------------------------------------------------------------
// family encoding

/// A family folded into one composite graph: `parts` in ascending
/// enumeration order, radix exponents recording the prefix vertex counts.
/// The composite is `p_0 + r_0 p_1 + r_1 p_2 + ...` with
/// `r_i = n^(prefix vertex count)`.
#[derive(Debug, Clone)]
pub struct EncodedFamily {
    parts: Vec<Graph>,
    /// prefix vertex counts `v_i`; the radix after part `i` is `n^(v_i)`
    prefix_vertices: Vec<BigUint>,
    universe: usize,
}

impl EncodedFamily {
    /// Folds `k` (deduplicated up to isomorphism, ascending enumeration
    /// order) for targets with at most `n` vertices.
    pub fn new(k: &[Graph], n: usize) -> Result<Self> {
        if k.is_empty() {
            return Err(HomError::Invalid("family encoding needs at least one graph".into()));
        }
        if n == 0 {
            return Err(HomError::Invalid("universe size must be >= 1".into()));
        }
        let mut parts: Vec<Graph> = Vec::new();
        for g in k {
            let mut dup = false;
            for existing in &parts {
                if crate::canon::is_isomorphic(existing, g)? {
                    dup = true;
                    break;
                }
            }
            if !dup {
                parts.push(g.clone());
            }
        }
        let mut order: Vec<(usize, usize, crate::canon::CanonicalForm, Graph)> = Vec::new();
        for g in parts {
            order.push((g.n(), g.edge_count(), canonical_form(&g)?, g));
        }
        order.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));
        let parts: Vec<Graph> = order.into_iter().map(|(_, _, _, g)| g).collect();

        let mut prefix_vertices = Vec::with_capacity(parts.len());
        let mut v = BigUint::from(parts[0].n());
        prefix_vertices.push(v.clone());
        for p in parts.iter().skip(1) {
            let Some(exp) = v.to_u32() else {
                return Err(HomError::Budget(
                    "family is too deep to encode: radix exponent overflows".into(),
                ));
            };
            if (exp as u64) * (64 - (n as u64).leading_zeros() as u64) > MATERIALIZE_BIT_CAP {
                return Err(HomError::Budget(
                    "family is too deep to encode: radix overflows".into(),
                ));
            }
            let radix = BigUint::from(n).pow(exp);
            v += radix * BigUint::from(p.n());
            prefix_vertices.push(v.clone());
        }
        Ok(EncodedFamily {
            parts,
            prefix_vertices,
            universe: n,
        })
    }

    pub fn parts(&self) -> &[Graph] {
        &self.parts
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Radix for the fold step after part `i` (`0 <= i < len-1`):
    /// `n^(prefix vertex count)`.
    pub fn radix(&self, i: usize) -> Result<BigUint> {
        let exp = self.prefix_vertices[i].to_u32().ok_or_else(|| {
            HomError::Budget("radix too large to materialize".into())
        })?;
        Ok(BigUint::from(self.universe).pow(exp))
    }

    /// Total vertex count of the composite.
    pub fn total_vertices(&self) -> BigUint {
        self.prefix_vertices
            .last()
            .expect("nonempty family")
            .clone()
    }

    /// Materializes the composite when it fits in memory.
    pub fn composite(&self) -> Result<Graph> {
        let total = self.total_vertices();
        let Some(total) = total.to_usize() else {
            return Err(HomError::Budget(format!(
                "composite has {} vertices, far beyond materialization",
                self.total_vertices()
            )));
        };
        if total > crate::graph::MAX_VERTICES {
            return Err(HomError::Budget(format!(
                "composite has {total} vertices, beyond the materialization cap"
            )));
        }
        let mut pieces: Vec<(Graph, usize)> = vec![(self.parts[0].clone(), 1)];
        for (i, p) in self.parts.iter().enumerate().skip(1) {
            let r = self.radix(i - 1)?;
            let r = r.to_usize().ok_or_else(|| {
                HomError::Budget("radix exceeds materialization cap".into())
            })?;
            pieces.push((p.clone(), r));
        }
        Graph::union_of(&pieces)
    }

    /// The composite's hom count into `g`, factored:
    /// `hom(p_0, g) * hom(p_1, g)^(r_0) * ...`.
    pub fn encoded_count(&self, g: &Graph) -> Result<FactoredCount> {
        let mut acc = FactoredCount::one();
        for (i, p) in self.parts.iter().enumerate() {
            let value = count(CountKind::Hom, p, g);
            if value.is_zero() {
                return Ok(FactoredCount::zero());
            }
            let mut factored = FactoredCount::from_value(&value)?;
            if i > 0 {
                factored.pow_big(&self.radix(i - 1)?);
            }
            acc.mul(&factored);
        }
        Ok(acc)
    }

    /// The composite's hom count as a plain integer when expandable.
    pub fn encoded_count_value(&self, g: &Graph) -> Result<BigUint> {
        self.encoded_count(g)?.to_value()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecodeOutcome {
    /// the count was zero: some family member had no homomorphism
    CaseA,
    /// per-part counts, in part order
    Counts(Vec<BigUint>),
}

/// Decodes an expanded composite count. Prime factors of valid counts are
/// bounded by `n^(largest part)`, so trial division suffices.
pub fn decode_counts(z: &BigUint, fam: &EncodedFamily) -> Result<DecodeOutcome> {
    if z.is_zero() {
        return Ok(DecodeOutcome::CaseA);
    }
    let max_part = fam.parts.iter().map(|p| p.n()).max().unwrap_or(1);
    let bound = (fam.universe as u64)
        .checked_pow(max_part as u32)
        .filter(|&b| b <= FACTOR_VALUE_CAP)
        .ok_or_else(|| {
            HomError::Invalid("prime bound too large for integer decoding; use factored counts".into())
        })?;
    let mut rest = z.clone();
    let mut factors: BTreeMap<u64, BigUint> = BTreeMap::new();
    let mut p = 2u64;
    while p <= bound && rest > BigUint::one() {
        let pb = BigUint::from(p);
        let mut e = BigUint::zero();
        loop {
            let (q, r) = rest.div_rem(&pb);
            if r.is_zero() {
                rest = q;
                e += 1u32;
            } else {
                break;
            }
        }
        if !e.is_zero() {
            factors.insert(p, e);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest != BigUint::one() {
        return Err(HomError::InvalidEncodedCount(format!(
            "a prime factor exceeds the bound {bound} for this universe"
        )));
    }
    decode_factored(
        &FactoredCount {
            zero: false,
            factors,
        },
        fam,
    )
}

/// Decodes a factored composite count by splitting each prime exponent at
/// the radices, last part first.
pub fn decode_factored(z: &FactoredCount, fam: &EncodedFamily) -> Result<DecodeOutcome> {
    if z.is_zero() {
        return Ok(DecodeOutcome::CaseA);
    }
    let m = fam.parts.len();
    let mut exps: BTreeMap<u64, BigUint> = z.exponents().clone();
    let mut counts: Vec<BigUint> = vec![BigUint::zero(); m];
    for i in (1..m).rev() {
        let radix = fam.radix(i - 1)?;
        let mut part_factors = BTreeMap::new();
        for (p, e) in exps.iter_mut() {
            let (quot, rem) = e.div_rem(&radix);
            if !quot.is_zero() {
                part_factors.insert(*p, quot);
            }
            *e = rem;
        }
        let part = FactoredCount {
            zero: false,
            factors: part_factors,
        };
        let value = part.to_value().map_err(|_| {
            HomError::InvalidEncodedCount("decoded part count overflows its radix bound".into())
        })?;
        // the part count is a hom count into an n-vertex target
        let bound = BigUint::from(fam.universe).pow(fam.parts[i].n() as u32);
        if value > bound {
            return Err(HomError::InvalidEncodedCount(format!(
                "part {i} decodes to a count above its bound"
            )));
        }
        counts[i] = value;
    }
    exps.retain(|_, e| !e.is_zero());
    let head = FactoredCount {
        zero: false,
        factors: exps,
    };
    let head_value = head.to_value().map_err(|_| {
        HomError::InvalidEncodedCount("leading part overflows its radix bound".into())
    })?;
    if m > 1 {
        let r0 = fam.radix(0)?;
        if head_value > r0 {
            return Err(HomError::InvalidEncodedCount(
                "leading part exceeds the first radix".into(),
            ));
        }
    }
    counts[0] = head_value;
    // prefix bound check: each folded prefix count must stay within its radix
    if m > 1 {
        let mut prefix = FactoredCount::from_value(&counts[0])?;
        for i in 1..m {
            let mut part = FactoredCount::from_value(&counts[i])?;
            part.pow_big(&fam.radix(i - 1)?);
            prefix.mul(&part);
            if i + 1 < m {
                let bound_bits = fam.prefix_vertices[i]
                    .to_u64()
                    .unwrap_or(u64::MAX)
                    .saturating_mul(64 - (fam.universe as u64).leading_zeros() as u64);
                if prefix.bit_estimate() > bound_bits.saturating_add(64) {
                    return Err(HomError::InvalidEncodedCount(
                        "folded prefix exceeds its radix bound".into(),
                    ));
                }
            }
        }
    }
    Ok(DecodeOutcome::Counts(counts))
}

/// The two sides of the composite-count collision criterion, computed
/// directly: (some member vanishes on each of g and h, all members agree).
pub fn encode_conditions(k: &[Graph], g: &Graph, h: &Graph) -> (bool, bool) {
    let vanish_g = k.iter().any(|f| count(CountKind::Hom, f, g).is_zero());
    let vanish_h = k.iter().any(|f| count(CountKind::Hom, f, h).is_zero());
    let agree = k
        .iter()
        .all(|f| count(CountKind::Hom, f, g) == count(CountKind::Hom, f, h));
    (vanish_g && vanish_h, agree)
}

// ---------------------------------------------------------------------------
// star decoding

/// Degree histogram from the star-count vector `hom(S_1..S_n, G)` via the
/// exact Vandermonde system.
pub fn histogram_from_star_vector(values: &[BigUint]) -> Result<Vec<usize>> {
    let n = values.len();
    if n == 0 {
        return Err(HomError::Invalid("empty star vector".into()));
    }
    if values[0] != BigUint::from(n) {
        return Err(HomError::InconsistentStarVector);
    }
    if n == 1 {
        return Ok(vec![1]);
    }
    // rows j = 2..n over unknowns d_1..d_{n-1}
    let m = RationalMatrix::from_fn(n - 1, n - 1, |r, c| {
        let i = BigUint::from(c + 1).pow((r + 1) as u32);
        BigRational::from_integer(i.into())
    });
    let b: Vec<BigRational> = values[1..]
        .iter()
        .map(|v| BigRational::from_integer(v.clone().into()))
        .collect();
    let x = match m.solve(&b)? {
        SolveOutcome::Unique(x) => x,
        _ => return Err(HomError::InconsistentStarVector),
    };
    let mut hist = vec![0usize; n];
    let mut used = 0usize;
    for (i, xi) in x.iter().enumerate() {
        if !xi.is_integer() {
            return Err(HomError::InconsistentStarVector);
        }
        let v = xi
            .to_integer()
            .to_biguint()
            .and_then(|b| b.to_usize())
            .ok_or(HomError::InconsistentStarVector)?;
        hist[i + 1] = v;
        used += v;
    }
    if used > n {
        return Err(HomError::InconsistentStarVector);
    }
    hist[0] = n - used;
    Ok(hist)
}

/// Smallest exponent at least `ceil(n log2 n)` strong enough for greedy
/// decoding: `n (i-1)^(L-1) < i^(L-1)` for all `2 <= i <= n-1`.
pub fn star_exponent(n: usize) -> Result<usize> {
    if n < 2 {
        return Err(HomError::Invalid("star exponent needs n >= 2".into()));
    }
    // ceil(n log2 n) = least L with 2^L >= n^n
    let nn = BigUint::from(n).pow(n as u32);
    let mut l = 1usize;
    while BigUint::from(2u32).pow(l as u32) < nn {
        l += 1;
    }
    loop {
        let ok = (2..n).all(|i| {
            let lhs = BigUint::from(n) * BigUint::from(i - 1).pow((l - 1) as u32);
            let rhs = BigUint::from(i).pow((l - 1) as u32);
            lhs < rhs
        });
        if ok {
            return Ok(l);
        }
        l += 1;
    }
}

/// Degree histogram from the single count `hom(S_L, G)` with
/// `L = star_exponent(n)`, by greedy mixed-radix decoding.
pub fn histogram_from_single_count(m: &BigUint, n: usize) -> Result<Vec<usize>> {
    let l = star_exponent(n)?;
    let mut rem = m.clone();
    let mut hist = vec![0usize; n];
    let mut used = 0usize;
    for i in (1..n).rev() {
        let pw = BigUint::from(i).pow((l - 1) as u32);
        let (q, r) = rem.div_rem(&pw);
        let d = q.to_usize().ok_or(HomError::InvalidStarCount(n))?;
        hist[i] = d;
        used += d;
        if used > n {
            return Err(HomError::InvalidStarCount(n));
        }
        rem = r;
    }
    if !rem.is_zero() {
        return Err(HomError::InvalidStarCount(n));
    }
    hist[0] = n - used;
    Ok(hist)
}

// ---------------------------------------------------------------------------
// oracle

#[derive(Debug, Clone)]
pub enum QueryPattern {
    Plain(CountKind, Graph),
    Encoded(EncodedFamily),
}

#[derive(Debug, Clone)]
pub enum Answer {
    Value(BigUint),
    Factored(FactoredCount),
}

impl Answer {
    pub fn as_value(&self) -> Result<BigUint> {
        match self {
            Answer::Value(v) => Ok(v.clone()),
            Answer::Factored(f) => f.to_value(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct LogEntry {
    pub description: String,
    pub answer: Answer,
}

enum OracleBackend {
    Hidden(Graph),
    Process {
        child: Child,
        stdin: ChildStdin,
        stdout: BufReader<ChildStdout>,
    },
}

/// Answers morphism-count queries about a hidden graph, either in-process
/// or over a line-protocol subprocess (`<kind> <graph6>` -> decimal).
pub struct HomOracle {
    backend: OracleBackend,
    orientation: Orientation,
    log: Vec<LogEntry>,
}

impl HomOracle {
    pub fn over_graph(hidden: Graph, orientation: Orientation) -> Self {
        HomOracle {
            backend: OracleBackend::Hidden(hidden),
            orientation,
            log: Vec::new(),
        }
    }

    pub fn over_command(program: &str, args: &[String], orientation: Orientation) -> Result<Self> {
        let mut child = Command::new(program)
            .args(args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .spawn()
            .map_err(|e| HomError::Oracle(format!("spawning oracle command: {e}")))?;
        let stdin = child
            .stdin
            .take()
            .ok_or_else(|| HomError::Oracle("oracle command has no stdin".into()))?;
        let stdout = child
            .stdout
            .take()
            .map(BufReader::new)
            .ok_or_else(|| HomError::Oracle("oracle command has no stdout".into()))?;
        Ok(HomOracle {
            backend: OracleBackend::Process {
                child,
                stdin,
                stdout,
            },
            orientation,
            log: Vec::new(),
        })
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn hidden_graph(&self) -> Option<&Graph> {
        match &self.backend {
            OracleBackend::Hidden(g) => Some(g),
            _ => None,
        }
    }

    pub fn log(&self) -> &[LogEntry] {
        &self.log
    }

    pub fn query_count(&self) -> usize {
        self.log.len()
    }

    /// A plain count query of the given kind.
    pub fn query_kind(&mut self, kind: CountKind, pattern: &Graph) -> Result<BigUint> {
        let value = match &mut self.backend {
            OracleBackend::Hidden(hidden) => match self.orientation {
                Orientation::Left => count(kind, pattern, hidden),
                Orientation::Right => count(kind, hidden, pattern),
            },
            OracleBackend::Process { stdin, stdout, .. } => {
                let line = format!("{} {}\n", kind.as_str(), graph6::encode(pattern));
                stdin
                    .write_all(line.as_bytes())
                    .and_then(|_| stdin.flush())
                    .map_err(|e| HomError::Oracle(format!("oracle write: {e}")))?;
                let mut reply = String::new();
                stdout
                    .read_line(&mut reply)
                    .map_err(|e| HomError::Oracle(format!("oracle read: {e}")))?;
                reply
                    .trim()
                    .parse::<BigUint>()
                    .map_err(|e| HomError::Oracle(format!("oracle reply '{}': {e}", reply.trim())))?
            }
        };
        self.log.push(LogEntry {
            description: format!("{} {}", kind.as_str(), graph6::encode(pattern)),
            answer: Answer::Value(value.clone()),
        });
        Ok(value)
    }

    /// A hom query.
    pub fn query(&mut self, pattern: &Graph) -> Result<BigUint> {
        self.query_kind(CountKind::Hom, pattern)
    }

    /// A hom query for an encoded composite, answered in factored form.
    /// Counts as a single query.
    pub fn query_encoded(&mut self, fam: &EncodedFamily) -> Result<FactoredCount> {
        let answer = if let OracleBackend::Hidden(hidden) = &self.backend {
            if self.orientation != Orientation::Left {
                return Err(HomError::Oracle(
                    "encoded queries are left-hom queries".into(),
                ));
            }
            fam.encoded_count(hidden)?
        } else {
            let composite = fam.composite()?;
            let value = self.query(&composite)?;
            self.log.pop(); // replace the inner log entry with the encoded one
            FactoredCount::from_value(&value)?
        };
        self.log.push(LogEntry {
            description: format!(
                "hom <encoded family of {} parts, {} vertices>",
                fam.parts().len(),
                fam.total_vertices()
            ),
            answer: Answer::Factored(answer.clone()),
        });
        Ok(answer)
    }

    fn run_query(&mut self, q: &QueryPattern) -> Result<Answer> {
        match q {
            QueryPattern::Plain(kind, g) => Ok(Answer::Value(self.query_kind(*kind, g)?)),
            QueryPattern::Encoded(fam) => Ok(Answer::Factored(self.query_encoded(fam)?)),
        }
    }
}

impl Drop for HomOracle {
    fn drop(&mut self) {
        if let OracleBackend::Process { child, .. } = &mut self.backend {
            let _ = child.kill();
            let _ = child.wait();
        }
    }
}

// ---------------------------------------------------------------------------
// strategies

type NextFn = Box<dyn Fn(&[Answer]) -> Result<QueryPattern> + Send + Sync>;
type AcceptFn = Box<dyn Fn(&[Answer]) -> Result<bool> + Send + Sync>;

/// A depth-k adaptive strategy: a starting query, a next-query function
/// consulted exactly k-1 times, and an acceptance predicate on the answers.
pub struct AdaptiveStrategy {
    pub name: String,
    pub depth: usize,
    start: QueryPattern,
    next: NextFn,
    accept: AcceptFn,
}

impl AdaptiveStrategy {
    pub fn new(
        name: impl Into<String>,
        depth: usize,
        start: QueryPattern,
        next: NextFn,
        accept: AcceptFn,
    ) -> Self {
        AdaptiveStrategy {
            name: name.into(),
            depth,
            start,
            next,
            accept,
        }
    }
}

#[derive(Debug, Clone)]
pub struct StrategyOutcome {
    pub decision: bool,
    pub transcript: Vec<LogEntry>,
}

/// Runs the strategy: exactly `depth` oracle queries, then the predicate.
pub fn run_strategy(strategy: &AdaptiveStrategy, oracle: &mut HomOracle) -> Result<StrategyOutcome> {
    let base = oracle.query_count();
    let mut answers: Vec<Answer> = Vec::with_capacity(strategy.depth);
    let mut q = strategy.start.clone();
    for step in 0..strategy.depth {
        let a = oracle.run_query(&q)?;
        answers.push(a);
        if step + 1 < strategy.depth {
            q = (strategy.next)(&answers)?;
        }
    }
    let decision = (strategy.accept)(&answers)?;
    Ok(StrategyOutcome {
        decision,
        transcript: oracle.log()[base..].to_vec(),
    })
}

/// Depth-1 strategy: is the vertex count odd?
pub fn odd_vertex_count_strategy() -> AdaptiveStrategy {
    AdaptiveStrategy::new(
        "odd-vertex-count",
        1,
        QueryPattern::Plain(CountKind::Hom, Graph::k1()),
        Box::new(|_| unreachable!("depth-1 strategy has no next query")),
        Box::new(|answers| Ok(answers[0].as_value()?.is_odd())),
    )
}

/// The two-query isolated-vertex strategy: vertex count, then one giant
/// star whose count decodes the whole degree histogram. Decides "the hidden
/// graph has an isolated vertex".
pub fn isolated_vertex_strategy() -> AdaptiveStrategy {
    AdaptiveStrategy::new(
        "isolated-vertex",
        2,
        QueryPattern::Plain(CountKind::Hom, Graph::k1()),
        Box::new(|answers| {
            let n = answers[0]
                .as_value()?
                .to_usize()
                .ok_or_else(|| HomError::Budget("vertex count exceeds usize".into()))?;
            let star = if n >= 2 {
                Graph::star(star_exponent(n)?)
            } else {
                Graph::path(2)
            };
            Ok(QueryPattern::Plain(CountKind::Hom, star))
        }),
        Box::new(|answers| {
            let n = answers[0]
                .as_value()?
                .to_usize()
                .ok_or_else(|| HomError::Budget("vertex count exceeds usize".into()))?;
            if n < 2 {
                return Ok(true); // a single vertex is isolated
            }
            let hist = histogram_from_single_count(&answers[1].as_value()?, n)?;
            Ok(hist[0] > 0)
        }),
    )
}

/// The full degree histogram by the same two queries.
pub fn degree_histogram_via_two_queries(oracle: &mut HomOracle) -> Result<Vec<usize>> {
    let n = oracle
        .query(&Graph::k1())?
        .to_usize()
        .ok_or_else(|| HomError::Budget("vertex count exceeds usize".into()))?;
    if n < 2 {
        oracle.query(&Graph::path(2))?;
        return Ok(vec![1]);
    }
    let m = oracle.query(&Graph::star(star_exponent(n)?))?;
    histogram_from_single_count(&m, n)
}

/// The parametric three-query strategy for a fixed universe size: vertex
/// count, then the bipartite part of the family encoded as one composite,
/// then the non-bipartite part. The acceptance predicate is caller-supplied.
pub struct ThreeAdaptive {
    pub strategy: AdaptiveStrategy,
    pub bipartite: EncodedFamily,
    pub non_bipartite: Option<EncodedFamily>,
}

pub fn three_adaptive_strategy(
    n: usize,
    family: &[Graph],
    accept: AcceptFn,
) -> Result<ThreeAdaptive> {
    let (bip, nonbip): (Vec<Graph>, Vec<Graph>) = family
        .iter()
        .cloned()
        .partition(|g| g.is_bipartite());
    let has_p2 = bip
        .iter()
        .any(|g| g.n() == 2 && g.edge_count() == 1);
    if !has_p2 {
        return Err(HomError::Invalid(
            "the bipartite part must contain the single-edge graph".into(),
        ));
    }
    let f1 = EncodedFamily::new(&bip, n)?;
    let f2 = if nonbip.is_empty() {
        None
    } else {
        Some(EncodedFamily::new(&nonbip, n)?)
    };
    let f1_for_next = f1.clone();
    let f2_for_next = f2.clone();
    let strategy = AdaptiveStrategy::new(
        format!("three-adaptive-n{n}"),
        3,
        QueryPattern::Plain(CountKind::Hom, Graph::k1()),
        Box::new(move |answers| match answers.len() {
            1 => Ok(QueryPattern::Encoded(f1_for_next.clone())),
            2 => Ok(match &f2_for_next {
                Some(f2) => QueryPattern::Encoded(f2.clone()),
                None => QueryPattern::Plain(CountKind::Hom, Graph::k1()),
            }),
            k => Err(HomError::Invalid(format!("unexpected answer prefix length {k}"))),
        }),
        accept,
    );
    Ok(ThreeAdaptive {
        strategy,
        bipartite: f1,
        non_bipartite: f2,
    })
}

/// Recovers the hidden graph (up to isomorphism) from 1 + |family| hom
/// queries, for hidden graphs of at most 6 vertices.
pub fn reconstruct_graph(oracle: &mut HomOracle) -> Result<Graph> {
    let n = oracle
        .query(&Graph::k1())?
        .to_usize()
        .filter(|&n| (1..=6).contains(&n))
        .ok_or_else(|| HomError::Budget("reconstruction is limited to 6 vertices".into()))?;
    let family = enumerate_all_upto(n)?;
    let mut answers = Vec::with_capacity(family.len());
    for f in &family {
        answers.push(oracle.query(f)?);
    }
    let mut matches = Vec::new();
    for candidate in enumerate_graphs(n)? {
        let agrees = family
            .iter()
            .zip(&answers)
            .all(|(f, a)| count(CountKind::Hom, f, &candidate) == *a);
        if agrees {
            matches.push(candidate);
        }
    }
    match matches.len() {
        1 => Ok(matches.pop().unwrap()),
        0 => Err(HomError::Consistency(
            "no graph matches the queried hom vector".into(),
        )),
        _ => Err(HomError::Consistency(
            "multiple graphs match the queried hom vector".into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// forbidden induced subgraphs and regularity

/// Membership in the class with the given forbidden induced subgraphs:
/// all strong-embedding counts vanish.
pub fn forb_membership(forbidden: &[Graph], g: &Graph) -> bool {
    forbidden
        .iter()
        .all(|f| count(CountKind::StrongEmb, f, g).is_zero())
}

/// Oracle flavour of the same non-adaptive algorithm.
pub fn forb_membership_oracle(forbidden: &[Graph], oracle: &mut HomOracle) -> Result<bool> {
    for f in forbidden {
        if !oracle.query_kind(CountKind::StrongEmb, f)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// k-regularity from counts alone: max degree at most k (forbidden induced
/// patterns with a vertex dominating k+1 others) plus the edge-count
/// identity `hom(P_2, G) = k * hom(K_1, G)`.
pub fn is_k_regular_via_counts(k: usize, g: &Graph) -> Result<bool> {
    let n_count = count(CountKind::Hom, &Graph::k1(), g);
    let p2_count = count(CountKind::Hom, &Graph::path(2), g);
    if p2_count != n_count * BigUint::from(k) {
        return Ok(false);
    }
    let forbidden: Vec<Graph> = enumerate_graphs(k + 2)?
        .into_iter()
        .filter(|h| (0..h.n()).any(|v| h.degree(v) == k + 1))
        .collect();
    Ok(forb_membership(&forbidden, g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_vector_decoding() {
        // K_1 + P_2: star counts (3, 2, 2)
        let values = vec![BigUint::from(3u32), BigUint::from(2u32), BigUint::from(2u32)];
        assert_eq!(histogram_from_star_vector(&values).unwrap(), vec![1, 2, 0]);
        // C_5: (5, 10, 20, 40, 80)
        let values: Vec<BigUint> = [5u32, 10, 20, 40, 80].iter().map(|&v| v.into()).collect();
        assert_eq!(
            histogram_from_star_vector(&values).unwrap(),
            vec![0, 0, 5, 0, 0]
        );
        // edgeless on 3 vertices
        let values = vec![BigUint::from(3u32), BigUint::zero(), BigUint::zero()];
        assert_eq!(histogram_from_star_vector(&values).unwrap(), vec![3, 0, 0]);
    }

    #[test]
    fn star_exponent_values() {
        assert_eq!(star_exponent(2).unwrap(), 2);
        assert_eq!(star_exponent(3).unwrap(), 5);
        // the returned exponent always satisfies the weaker published bound
        for n in 2..=8 {
            let l = star_exponent(n).unwrap();
            for i in 1..n {
                let lhs = BigUint::from(i).pow((l - 1) as u32);
                let rhs = BigUint::from(n - 1) * BigUint::from(i.saturating_sub(1)).pow((l - 1) as u32);
                assert!(lhs > rhs, "weak inequality fails at n={n} i={i}");
            }
        }
    }

    #[test]
    fn single_count_decoding() {
        // K_1 + P_2 with n = 3, L = 5: count = 2 * 1^4 = 2
        assert_eq!(
            histogram_from_single_count(&BigUint::from(2u32), 3).unwrap(),
            vec![1, 2, 0]
        );
        // edgeless on 4
        assert_eq!(
            histogram_from_single_count(&BigUint::zero(), 4).unwrap(),
            vec![4, 0, 0, 0]
        );
    }

    #[test]
    fn encode_family_small() {
        let fam = EncodedFamily::new(&[Graph::path(3), Graph::path(2)], 3).unwrap();
        // ascending order puts P_2 first; radix 3^2 = 9
        assert_eq!(fam.parts()[0].n(), 2);
        assert_eq!(fam.radix(0).unwrap(), BigUint::from(9u32));
        assert_eq!(fam.total_vertices(), BigUint::from(2 + 9 * 3u32));
        let composite = fam.composite().unwrap();
        assert_eq!(composite.n(), 29);
        // hom(F_K, C_3) = 6 * 12^9
        let c3 = Graph::cycle(3).unwrap();
        let direct = count(CountKind::Hom, &composite, &c3);
        let expected = BigUint::from(6u32) * BigUint::from(12u32).pow(9);
        assert_eq!(direct, expected);
        assert_eq!(fam.encoded_count_value(&c3).unwrap(), expected);
    }

    #[test]
    fn decode_roundtrips() {
        let fam = EncodedFamily::new(&[Graph::path(2), Graph::path(3)], 3).unwrap();
        let c3 = Graph::cycle(3).unwrap();
        let z = fam.encoded_count_value(&c3).unwrap();
        match decode_counts(&z, &fam).unwrap() {
            DecodeOutcome::Counts(counts) => {
                assert_eq!(counts, vec![BigUint::from(6u32), BigUint::from(12u32)]);
            }
            DecodeOutcome::CaseA => panic!("unexpected zero case"),
        }
        assert_eq!(
            decode_counts(&BigUint::zero(), &fam).unwrap(),
            DecodeOutcome::CaseA
        );
        match decode_counts(&BigUint::one(), &fam).unwrap() {
            DecodeOutcome::Counts(counts) => {
                assert!(counts.iter().all(|c| c == &BigUint::one()));
            }
            _ => panic!("one decodes to all-ones"),
        }
    }

    #[test]
    fn single_part_family() {
        let fam = EncodedFamily::new(&[Graph::clique(3)], 4).unwrap();
        assert_eq!(fam.parts().len(), 1);
        assert_eq!(fam.total_vertices(), BigUint::from(3u32));
        let g = Graph::clique(4);
        let z = fam.encoded_count_value(&g).unwrap();
        assert_eq!(z, count(CountKind::Hom, &Graph::clique(3), &g));
        match decode_counts(&z, &fam).unwrap() {
            DecodeOutcome::Counts(c) => assert_eq!(c, vec![z]),
            _ => panic!(),
        }
    }

    #[test]
    fn isolated_strategy_examples() {
        let st = isolated_vertex_strategy();
        let mut oracle = HomOracle::over_graph(Graph::cycle(5).unwrap(), Orientation::Left);
        let out = run_strategy(&st, &mut oracle).unwrap();
        assert!(!out.decision);
        assert_eq!(out.transcript.len(), 2);

        let hidden = Graph::k1().disjoint_union(&Graph::path(2)).unwrap();
        let mut oracle = HomOracle::over_graph(hidden, Orientation::Left);
        let out = run_strategy(&st, &mut oracle).unwrap();
        assert!(out.decision);
        assert_eq!(out.transcript.len(), 2);
    }

    #[test]
    fn depth_one_odd() {
        let st = odd_vertex_count_strategy();
        let mut oracle = HomOracle::over_graph(Graph::cycle(5).unwrap(), Orientation::Left);
        assert!(run_strategy(&st, &mut oracle).unwrap().decision);
        let mut oracle = HomOracle::over_graph(Graph::cycle(6).unwrap(), Orientation::Left);
        assert!(!run_strategy(&st, &mut oracle).unwrap().decision);
    }

    #[test]
    fn reconstruct_small() {
        for hidden in [
            Graph::cycle(5).unwrap(),
            Graph::k1(),
            Graph::star(4).disjoint_union(&Graph::k1()).unwrap(),
        ] {
            let mut oracle = HomOracle::over_graph(hidden.clone(), Orientation::Left);
            let got = reconstruct_graph(&mut oracle).unwrap();
            assert!(crate::canon::is_isomorphic(&got, &hidden).unwrap());
            let expected_queries = 1 + enumerate_all_upto(hidden.n()).unwrap().len();
            assert_eq!(oracle.query_count(), expected_queries);
        }
    }

    #[test]
    fn forb_and_regularity() {
        let p2 = Graph::path(2);
        let edgeless = Graph::k1().replicate(3).unwrap();
        assert!(forb_membership(&[p2.clone()], &edgeless));
        assert!(!forb_membership(&[p2.clone()], &Graph::path(2)));
        assert!(is_k_regular_via_counts(3, &Graph::clique(4)).unwrap());
        assert!(!is_k_regular_via_counts(3, &Graph::cycle(5).unwrap()).unwrap());
    }
}
