//! Calculus of circular integer sequences attached to monodromies.
//!
//! A sequence d = (d_1,...,d_k) evaluates to the matrix
//! A(d) = T^{-d_k} S ... T^{-d_1} S, a product of blocks [[d,1],[-1,0]].
//! Negative hyperbolic monodromies are exactly the conjugates of -A(d)
//! with every d_i >= 2 and some d_i >= 3; the sequence is circular (a
//! rotation gives a conjugate matrix) and unique up to rotation, so
//! everything here is computed relative to a canonical rotation.
//!
//! The module also provides the block decomposition
//! d = (n_1+3, 2^{m_1}, ..., n_s+3, 2^{m_s}), the orientation-reversal
//! sequence rho(d) = (m_s+3, 2^{n_s}, ..., m_1+3, 2^{n_1}), the blowup
//! move on circular sequences (increment two circular neighbors, insert
//! a 1 between them), componentwise cyclic domination, an exhaustive
//! bounded blowup search, and normal-form extraction for parabolic and
//! negative hyperbolic matrices.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::sl2z::{conjugacy_witness_search, Mat2};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeqError {
    #[error("sequence ({seq}) is not a hyperbolic normal-form shape: {reason}")]
    NotHyperbolicShape { seq: String, reason: String },
    #[error("edge index {index} out of range for a sequence of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("sequence of length {len} is too short for a blowup; need length >= 2")]
    SequenceTooShort { len: usize },
    #[error("matrix has trace {trace}, not a parabolic (trace +-2) matrix")]
    NotParabolic { trace: i64 },
    #[error("matrix has trace {trace}; negative hyperbolic requires trace <= -3")]
    NotNegativeHyperbolic { trace: i64 },
    #[error("cannot parse sequence from {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// A nonempty circular sequence of integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DSeq {
    entries: Vec<i64>,
}

impl DSeq {
    pub fn new(entries: Vec<i64>) -> Self {
        assert!(!entries.is_empty(), "circular sequence must be nonempty");
        DSeq { entries }
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sum(&self) -> i64 {
        self.entries.iter().sum()
    }

    fn rotated_left(&self, r: usize) -> Vec<i64> {
        let k = self.len();
        (0..k).map(|i| self.entries[(i + r) % k]).collect()
    }

    /// Every entry >= 2 and some entry >= 3; the shape required of
    /// negative hyperbolic normal forms.
    pub fn is_hyperbolic_shape(&self) -> bool {
        self.entries.iter().all(|&d| d >= 2) && self.entries.iter().any(|&d| d >= 3)
    }

    fn require_hyperbolic_shape(&self) -> Result<(), SeqError> {
        if let Some(&bad) = self.entries.iter().find(|&&d| d < 2) {
            return Err(SeqError::NotHyperbolicShape {
                seq: self.to_string(),
                reason: format!("entry {bad} is below 2"),
            });
        }
        if self.entries.iter().all(|&d| d == 2) {
            return Err(SeqError::NotHyperbolicShape {
                seq: self.to_string(),
                reason: "every entry is 2; some entry must be at least 3".to_string(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for DSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for DSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for DSeq {
    type Err = SeqError;

    /// Comma-separated integers, e.g. "5,2,2,3".
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| SeqError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(err("empty sequence"));
        }
        let entries = trimmed
            .split(',')
            .map(|cell| cell.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| err(&e.to_string()))?;
        Ok(DSeq::new(entries))
    }
}

impl Serialize for DSeq {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for DSeq {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A(d) = T^{-d_k} S ... T^{-d_1} S, the product of the blocks
/// [[d_k,1],[-1,0]] ... [[d_1,1],[-1,0]].
pub fn eval_a(d: &DSeq) -> Mat2 {
    eval_entries(d.entries())
}

fn eval_entries(entries: &[i64]) -> Mat2 {
    entries
        .iter()
        .fold(Mat2::IDENTITY, |acc, &di| Mat2::new(di, 1, -1, 0) * acc)
}

/// The lexicographically least rotation whose first entry is >= 3.
///
/// Requires the hyperbolic shape (all entries >= 2, some >= 3); every
/// sequence-valued output in this module is reported in this rotation.
pub fn canonical_rotation(d: &DSeq) -> Result<DSeq, SeqError> {
    d.require_hyperbolic_shape()?;
    let best = (0..d.len())
        .filter(|&r| d.entries()[r] >= 3)
        .map(|r| d.rotated_left(r))
        .min()
        .expect("some entry is >= 3");
    Ok(DSeq::new(best))
}

/// Block decomposition d = (n_1+3, 2^{m_1}, ..., n_s+3, 2^{m_s}).
///
/// Blocks are read in the circular order of the input, starting from its
/// first entry >= 3; rotating the input rotates the block list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockForm {
    pub blocks: Vec<(i64, i64)>,
}

impl BlockForm {
    pub fn s(&self) -> usize {
        self.blocks.len()
    }

    pub fn sum_n(&self) -> i64 {
        self.blocks.iter().map(|&(n, _)| n).sum()
    }

    pub fn sum_m(&self) -> i64 {
        self.blocks.iter().map(|&(_, m)| m).sum()
    }

    /// The sequence (n_1+3, 2^{m_1}, ..., n_s+3, 2^{m_s}).
    pub fn reconstruct(&self) -> DSeq {
        let mut entries = Vec::new();
        for &(n, m) in &self.blocks {
            entries.push(n + 3);
            entries.extend(std::iter::repeat(2).take(m as usize));
        }
        DSeq::new(entries)
    }
}

impl fmt::Display for BlockForm {
    /// Prints each block as its head followed by the 2-run, e.g.
    /// the blocks (2,2),(0,0) render as "5,2×2,3".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for &(n, m) in &self.blocks {
            parts.push(format!("{}", n + 3));
            if m > 0 {
                parts.push(format!("2×{m}"));
            }
        }
        write!(f, "{}", parts.join(","))
    }
}

/// Parse the block decomposition, reading circularly from the first
/// entry >= 3 of the input.
pub fn parse_blocks(d: &DSeq) -> Result<BlockForm, SeqError> {
    d.require_hyperbolic_shape()?;
    let start = d
        .entries()
        .iter()
        .position(|&x| x >= 3)
        .expect("some entry is >= 3");
    let rotated = d.rotated_left(start);
    let mut blocks = Vec::new();
    let mut i = 0;
    while i < rotated.len() {
        let head = rotated[i];
        let mut m = 0i64;
        i += 1;
        while i < rotated.len() && rotated[i] == 2 {
            m += 1;
            i += 1;
        }
        blocks.push((head - 3, m));
    }
    Ok(BlockForm { blocks })
}

/// Orientation-reversal sequence: blocks (n_i, m_i) become, in reverse
/// order, blocks (m_i, n_i), giving (m_s+3, 2^{n_s}, ..., m_1+3, 2^{n_1}).
/// Reversing the bundle orientation replaces the normal form -A(d) by
/// -A(rho(d)); rho is an involution up to rotation. The result is
/// reported in canonical rotation.
pub fn rho(d: &DSeq) -> Result<DSeq, SeqError> {
    let form = parse_blocks(d)?;
    let mut entries = Vec::new();
    for &(n, m) in form.blocks.iter().rev() {
        entries.push(m + 3);
        entries.extend(std::iter::repeat(2).take(n as usize));
    }
    canonical_rotation(&DSeq::new(entries))
}

/// Blow up the circular edge between positions `edge` and `edge+1 mod k`
/// (0-based): both neighbors gain 1 and a new entry 1 is inserted
/// between them. Length grows by exactly one and no entry decreases.
pub fn blowup(d: &DSeq, edge: usize) -> Result<DSeq, SeqError> {
    let k = d.len();
    if k < 2 {
        return Err(SeqError::SequenceTooShort { len: k });
    }
    if edge >= k {
        return Err(SeqError::IndexOutOfRange {
            index: edge,
            len: k,
        });
    }
    let e = d.entries();
    let mut out = Vec::with_capacity(k + 1);
    if edge + 1 < k {
        out.extend_from_slice(&e[..edge]);
        out.push(e[edge] + 1);
        out.push(1);
        out.push(e[edge + 1] + 1);
        out.extend_from_slice(&e[edge + 2..]);
    } else {
        // Wrap edge: the inserted 1 sits between the last and first entries.
        out.push(e[0] + 1);
        out.extend_from_slice(&e[1..k - 1]);
        out.push(e[k - 1] + 1);
        out.push(1);
    }
    Ok(DSeq::new(out))
}

/// Componentwise domination up to rotation: `Some(r)` for the smallest
/// rotation r with b[i] <= e[(i+r) mod l] for all i (equal lengths only).
pub fn leq_cyclic(b: &DSeq, e: &DSeq) -> Option<usize> {
    if b.len() != e.len() {
        return None;
    }
    (0..e.len()).find(|&r| {
        b.entries()
            .iter()
            .zip(e.rotated_left(r))
            .all(|(&bi, ei)| bi <= ei)
    })
}

/// Exhaustive search for a blowup script: exactly `target_len - 2`
/// blowups applied to (0,0) whose result is cyclically dominated by
/// `bound`. Returns the lexicographically least edge script, or `None`
/// when no script of that length works (definitive for this search
/// space, which contains every blowup sequence of the required length).
pub fn blowup_reachable_search(target_len: usize, bound: &DSeq) -> Option<Vec<usize>> {
    assert_eq!(
        target_len,
        bound.len(),
        "target length must equal the bound's length"
    );
    assert!(target_len >= 2, "bound must have length at least 2");
    let max_bound = *bound.entries().iter().max().expect("nonempty");

    fn dfs(
        current: &DSeq,
        bound: &DSeq,
        max_bound: i64,
        failed: &mut HashSet<Vec<i64>>,
        script: &mut Vec<usize>,
    ) -> bool {
        if current.len() == bound.len() {
            return leq_cyclic(current, bound).is_some();
        }
        // Entries never decrease under blowups, so an entry already above
        // the bound's maximum can never be dominated.
        if current.entries().iter().any(|&x| x > max_bound) {
            return false;
        }
        if failed.contains(current.entries()) {
            return false;
        }
        for edge in 0..current.len() {
            let next = blowup(current, edge).expect("edge in range");
            script.push(edge);
            if dfs(&next, bound, max_bound, failed, script) {
                return true;
            }
            script.pop();
        }
        failed.insert(current.entries().to_vec());
        false
    }

    let start = DSeq::new(vec![0, 0]);
    let mut script = Vec::new();
    let mut failed = HashSet::new();
    if dfs(&start, bound, max_bound, &mut failed, &mut script) {
        Some(script)
    } else {
        None
    }
}

/// Conjugacy normal form of a parabolic matrix: sign * T^n together with
/// an explicit conjugator. The pair (sign, n) is a complete conjugacy
/// invariant; +-I are handled as n = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicNF {
    pub sign: i64,
    pub n: i64,
    pub conjugator: Mat2,
}

/// Extract the parabolic normal form: a conjugator C with
/// C A C^{-1} = sign * T^n exactly (checked before returning).
pub fn parabolic_normal_form(a: &Mat2) -> Result<ParabolicNF, SeqError> {
    let trace = a.trace();
    if trace.abs() != 2 {
        return Err(SeqError::NotParabolic { trace });
    }
    let sign = trace.signum();
    let b = if sign == 1 { *a } else { -*a };
    // b is unipotent: n = b - I satisfies n^2 = 0, and its kernel equals
    // its image. A primitive kernel vector v extends to a basis (v, u)
    // of determinant 1 in which b becomes T^n.
    let n11 = b.a - 1;
    let n12 = b.b;
    let n21 = b.c;
    let n22 = b.d - 1;
    let (nf, conjugator) = if n11 == 0 && n12 == 0 && n21 == 0 && n22 == 0 {
        (0, Mat2::IDENTITY)
    } else {
        let (rv1, rv2) = if (n11, n12) != (0, 0) {
            (n12, -n11)
        } else {
            (n22, -n21)
        };
        let g = gcd_i64(rv1, rv2);
        let (mut v1, mut v2) = (rv1 / g, rv2 / g);
        let lead = if v1 != 0 { v1 } else { v2 };
        if lead < 0 {
            v1 = -v1;
            v2 = -v2;
        }
        // u completes (v, u) to a determinant-1 basis: v1*u2 - v2*u1 = 1.
        let (_, s, t) = ext_gcd_i64(v1, v2);
        let (u1, u2) = (-t, s);
        debug_assert_eq!(v1 * u2 - v2 * u1, 1);
        let p = Mat2::new(v1, u1, v2, u2);
        let c = p.inverse().expect("basis matrix has determinant 1");
        // b fixes v and shears u by n*v.
        let nu1 = n11 * u1 + n12 * u2;
        let nu2 = n21 * u1 + n22 * u2;
        let n = if v1 != 0 { nu1 / v1 } else { nu2 / v2 };
        debug_assert_eq!((nu1, nu2), (n * v1, n * v2));
        (n, c)
    };
    let target = {
        let t_n = Mat2::T.pow(nf);
        if sign == 1 {
            t_n
        } else {
            -t_n
        }
    };
    assert_eq!(
        a.conjugated_by(&conjugator),
        target,
        "parabolic normal form verification failed"
    );
    Ok(ParabolicNF {
        sign,
        n: nf,
        conjugator,
    })
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let mut x = a.abs();
    let mut y = b.abs();
    while y != 0 {
        (x, y) = (y, x % y);
    }
    x
}

/// (g, s, t) with s*a + t*b = g = gcd(a,b) > 0 for (a,b) != (0,0).
fn ext_gcd_i64(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        let s = if a < 0 { -1 } else { 1 };
        return (a.abs(), s, 0);
    }
    let (g, x, y) = ext_gcd_i64(b, a.rem_euclid(b));
    (g, y, x - a.div_euclid(b) * y)
}

/// Search budget for [`decompose_negative_hyperbolic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecomposeBudget {
    /// Largest entry sum of candidate sequences tried.
    pub max_entry_sum: i64,
    /// Entry bound handed to the conjugator search.
    pub conjugator_bound: i64,
}

impl Default for DecomposeBudget {
    fn default() -> Self {
        DecomposeBudget {
            max_entry_sum: 30,
            conjugator_bound: 50,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposition {
    /// `conjugator * (-A(seq)) * conjugator^{-1}` equals the input exactly.
    Found { seq: DSeq, conjugator: Mat2 },
    /// The budget was exhausted; says nothing about larger sequences.
    Unknown,
}

/// Find the circular sequence d with the input conjugate to -A(d).
///
/// Candidates are enumerated by entry sum, canonical rotations only,
/// filtered by trace, and verified by an explicit conjugator; the first
/// verified candidate is returned. The normal form is unique up to
/// rotation, so the canonical representative is well defined.
pub fn decompose_negative_hyperbolic(
    a: &Mat2,
    budget: &DecomposeBudget,
) -> Result<Decomposition, SeqError> {
    let trace = a.trace();
    if trace > -3 {
        return Err(SeqError::NotNegativeHyperbolic { trace });
    }
    for total in 3..=budget.max_entry_sum {
        let mut found: Option<Decomposition> = None;
        enumerate_compositions(total, &mut |entries| {
            if found.is_some() {
                return;
            }
            // Trace is conjugacy-invariant and cheap: filter on it before
            // the canonicality check and the witness search.
            let normal = -eval_entries(entries);
            if normal.trace() != trace {
                return;
            }
            let seq = DSeq::new(entries.to_vec());
            let canon = canonical_rotation(&seq).expect("entries >= 2 with a head >= 3");
            if canon.entries() != entries {
                return;
            }
            if let Some(x) = conjugacy_witness_search(&normal, a, budget.conjugator_bound) {
                assert_eq!(normal.conjugated_by(&x), *a);
                found = Some(Decomposition::Found { seq, conjugator: x });
            }
        });
        if let Some(d) = found {
            return Ok(d);
        }
    }
    Ok(Decomposition::Unknown)
}

/// Visit, in lexicographic order, every sequence with entry sum `total`,
/// all entries >= 2, first entry >= 3.
fn enumerate_compositions(total: i64, visit: &mut impl FnMut(&[i64])) {
    fn rec(remaining: i64, prefix: &mut Vec<i64>, visit: &mut impl FnMut(&[i64])) {
        if remaining == 0 {
            visit(prefix);
            return;
        }
        let lo = if prefix.is_empty() { 3 } else { 2 };
        for next in lo..=remaining {
            if remaining - next == 1 {
                continue; // no entry below 2 can follow
            }
            prefix.push(next);
            rec(remaining - next, prefix, visit);
            prefix.pop();
        }
    }
    let mut prefix = Vec::new();
    rec(total, &mut prefix, visit);
}

/// True iff the sequences agree after some rotation.
pub fn cyclic_equivalent(d1: &DSeq, d2: &DSeq) -> bool {
    d1.len() == d2.len() && (0..d1.len()).any(|r| d1.rotated_left(r) == *d2.entries())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(s: &str) -> DSeq {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(seq("5,2,2,3").entries(), &[5, 2, 2, 3]);
        assert_eq!(seq(" 3 , 2 ").to_string(), "3,2");
        assert!("".parse::<DSeq>().is_err());
        assert!("3,,2".parse::<DSeq>().is_err());
    }

    #[test]
    fn eval_examples() {
        assert_eq!(eval_a(&seq("3")), Mat2::new(3, 1, -1, 0));
        assert_eq!(eval_a(&seq("3,2")), Mat2::new(5, 2, -3, -1));
        assert_eq!(eval_a(&seq("2,2")), Mat2::new(3, 2, -2, -1));
        assert_eq!(eval_a(&seq("2,2")).trace(), 2);
    }

    #[test]
    fn canonical_rotation_examples() {
        assert_eq!(canonical_rotation(&seq("2,2,5")).unwrap(), seq("5,2,2"));
        assert_eq!(canonical_rotation(&seq("3,2,4")).unwrap(), seq("3,2,4"));
        assert!(matches!(
            canonical_rotation(&seq("2,2,2")),
            Err(SeqError::NotHyperbolicShape { .. })
        ));
        assert!(matches!(
            canonical_rotation(&seq("1,3")),
            Err(SeqError::NotHyperbolicShape { .. })
        ));
    }

    #[test]
    fn parse_blocks_examples() {
        assert_eq!(parse_blocks(&seq("3")).unwrap().blocks, vec![(0, 0)]);
        assert_eq!(parse_blocks(&seq("4,2")).unwrap().blocks, vec![(1, 1)]);
        assert_eq!(
            parse_blocks(&seq("5,2,2,3")).unwrap().blocks,
            vec![(2, 2), (0, 0)]
        );
        assert_eq!(parse_blocks(&seq("2,2,5")).unwrap().blocks, vec![(2, 2)]);
        let form = parse_blocks(&seq("5,2,2,3")).unwrap();
        assert_eq!(form.s(), 2);
        assert_eq!(form.sum_n(), 2);
        assert_eq!(form.sum_m(), 2);
        assert_eq!(form.to_string(), "5,2×2,3");
        assert_eq!(form.reconstruct(), seq("5,2,2,3"));
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(&seq("4,2")).unwrap(), seq("4,2"));
        assert_eq!(rho(&seq("5")).unwrap(), seq("3,2,2"));
        assert_eq!(rho(&seq("5,2,2,3")).unwrap(), seq("3,5,2,2"));
    }

    #[test]
    fn blowup_examples() {
        assert_eq!(blowup(&seq("0,0"), 0).unwrap(), seq("1,1,1"));
        assert_eq!(blowup(&seq("1,1,1"), 0).unwrap(), seq("2,1,2,1"));
        assert_eq!(blowup(&seq("2,1,2,1"), 0).unwrap(), seq("3,1,2,2,1"));
        // Wrap edge inserts the 1 between the last and first entries.
        assert_eq!(blowup(&seq("0,0"), 1).unwrap(), seq("1,1,1"));
        assert_eq!(blowup(&seq("3,2,4"), 2).unwrap(), seq("4,2,5,1"));
        assert_eq!(
            blowup(&seq("1,1,1"), 3),
            Err(SeqError::IndexOutOfRange { index: 3, len: 3 })
        );
        assert_eq!(
            blowup(&seq("5"), 0),
            Err(SeqError::SequenceTooShort { len: 1 })
        );
    }

    #[test]
    fn leq_cyclic_examples() {
        assert_eq!(leq_cyclic(&seq("1,1,1"), &seq("5,2,2")), Some(0));
        assert_eq!(leq_cyclic(&seq("0,0"), &seq("4,2")), Some(0));
        assert_eq!(leq_cyclic(&seq("3,1"), &seq("2,5")), Some(1));
        assert_eq!(leq_cyclic(&seq("3,3"), &seq("2,5")), None);
        assert_eq!(leq_cyclic(&seq("1,1"), &seq("2,2,2")), None);
    }

    #[test]
    fn blowup_search_examples() {
        let script = blowup_reachable_search(3, &seq("5,2,2")).unwrap();
        assert_eq!(script, vec![0]);
        let script = blowup_reachable_search(5, &seq("4,2,2,2,2")).unwrap();
        assert_eq!(script, vec![0, 0, 0]);
        let mut current = seq("0,0");
        for &edge in &script {
            current = blowup(&current, edge).unwrap();
        }
        assert_eq!(current, seq("3,1,2,2,1"));
        assert!(leq_cyclic(&current, &seq("4,2,2,2,2")).is_some());
        // Zero blowups needed: (0,0) is already dominated by (2,2).
        assert_eq!(blowup_reachable_search(2, &seq("2,2")), Some(vec![]));
        // No length-6 blowup result fits under (3,2,2,2,2,2).
        assert_eq!(blowup_reachable_search(6, &seq("3,2,2,2,2,2")), None);
    }

    #[test]
    fn parabolic_normal_form_examples() {
        for n in -6..=6 {
            let nf = parabolic_normal_form(&-Mat2::T.pow(n)).unwrap();
            assert_eq!((nf.sign, nf.n, nf.conjugator), (-1, n, Mat2::IDENTITY));
        }
        let nf = parabolic_normal_form(&Mat2::new(1, 0, -1, 1)).unwrap();
        assert_eq!((nf.sign, nf.n), (1, 1));
        let nf = parabolic_normal_form(&Mat2::new(-1, 0, 1, -1)).unwrap();
        assert_eq!((nf.sign, nf.n), (-1, 1));
        let nf = parabolic_normal_form(&Mat2::IDENTITY).unwrap();
        assert_eq!((nf.sign, nf.n), (1, 0));
        assert_eq!(
            parabolic_normal_form(&Mat2::S),
            Err(SeqError::NotParabolic { trace: 0 })
        );
    }

    #[test]
    fn decompose_examples() {
        let budget = DecomposeBudget::default();
        match decompose_negative_hyperbolic(&Mat2::new(-3, -1, 1, 0), &budget).unwrap() {
            Decomposition::Found { seq: d, .. } => assert_eq!(d, seq("3")),
            other => panic!("expected (3), got {other:?}"),
        }
        let x = Mat2::T * Mat2::S * Mat2::T;
        let a = (-eval_a(&seq("3,2"))).conjugated_by(&x);
        match decompose_negative_hyperbolic(&a, &budget).unwrap() {
            Decomposition::Found { seq: d, conjugator } => {
                assert_eq!(d, seq("3,2"));
                assert_eq!((-eval_a(&d)).conjugated_by(&conjugator), a);
            }
            other => panic!("expected (3,2), got {other:?}"),
        }
        assert_eq!(
            decompose_negative_hyperbolic(&-eval_a(&seq("2,2")), &budget),
            Err(SeqError::NotNegativeHyperbolic { trace: -2 })
        );
    }

    #[test]
    fn cyclic_equivalent_examples() {
        assert!(cyclic_equivalent(&seq("3,2,2"), &seq("2,3,2")));
        assert!(cyclic_equivalent(&seq("3,2"), &seq("2,3")));
        assert!(!cyclic_equivalent(&seq("3,2,2"), &seq("3,2")));
        assert!(!cyclic_equivalent(&seq("3,2"), &seq("3,3")));
    }

    proptest! {
        #[test]
        fn all_twos_are_parabolic(k in 1usize..10) {
            let d = DSeq::new(vec![2; k]);
            prop_assert_eq!(eval_a(&d).trace(), 2);
        }

        #[test]
        fn rho_is_an_involution_up_to_rotation(
            blocks in prop::collection::vec((0i64..5, 0i64..5), 1..5)
        ) {
            let d = BlockForm { blocks }.reconstruct();
            let twice = rho(&rho(&d).unwrap()).unwrap();
            prop_assert!(cyclic_equivalent(&twice, &canonical_rotation(&d).unwrap()));
        }

        #[test]
        fn blowup_grows_by_one_and_never_decreases(
            entries in prop::collection::vec(0i64..6, 2..6),
            edge_pick in 0usize..6
        ) {
            let d = DSeq::new(entries.clone());
            let edge = edge_pick % d.len();
            let out = blowup(&d, edge).unwrap();
            prop_assert_eq!(out.len(), d.len() + 1);
            prop_assert_eq!(out.sum(), d.sum() + 3);
            // Blowdown round trip: drop the inserted 1 and decrement its
            // two circular neighbors to recover the input.
            let pos = if edge + 1 < d.len() { edge + 1 } else { d.len() };
            prop_assert_eq!(out.entries()[pos], 1);
            let mut v: Vec<i64> = out.entries().to_vec();
            v.remove(pos);
            let l = v.len();
            v[(pos + l - 1) % l] -= 1;
            v[pos % l] -= 1;
            prop_assert_eq!(&v[..], d.entries());
        }
    }
}
