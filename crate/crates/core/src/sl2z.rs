//! Exact 2x2 integer matrix algebra for torus-bundle monodromies.
//!
//! A torus bundle over the circle is the mapping torus of an element of
//! SL(2,Z) acting on the torus; the matrix is its monodromy. This module
//! provides the generators S = [[0,1],[-1,0]] and T = [[1,1],[0,1]], the
//! trace classification into elliptic / parabolic / hyperbolic with sign,
//! Dehn-twist transvections along primitive slopes, Legendrian-surgery
//! products, powers for fiberwise cyclic covers, and a deterministic
//! bounded search for explicit conjugators.
//!
//! All arithmetic is exact. Products are computed in 128-bit intermediates
//! and converted back with a hard error on overflow; nothing wraps.

use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix has determinant {det}, expected +1")]
    NotSL2 { det: i64 },
    #[error("slope ({p},{q}) is not primitive")]
    NotPrimitive { p: i64, q: i64 },
    #[error("cannot parse matrix from {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

fn narrow(x: i128) -> i64 {
    i64::try_from(x).expect("matrix entry exceeds 64 bits; refusing to wrap")
}

/// A 2x2 integer matrix [[a,b],[c,d]].
///
/// The type itself admits any integer matrix (differences like A - I are
/// needed for homology); operations that require a monodromy check
/// `det == +1` and fail loudly otherwise.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2::new(1, 0, 0, 1);
    /// Order-four generator [[0,1],[-1,0]].
    pub const S: Mat2 = Mat2::new(0, 1, -1, 0);
    /// Unipotent generator [[1,1],[0,1]]; the Dehn twist along the slope (1,0).
    pub const T: Mat2 = Mat2::new(1, 1, 0, 1);
    /// The orientation-reversing swap [[0,1],[1,0]] used when comparing a
    /// bundle with the reverse of another; J is its own inverse.
    pub const J: Mat2 = Mat2::new(0, 1, 1, 0);

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn det(&self) -> i64 {
        narrow(self.a as i128 * self.d as i128 - self.b as i128 * self.c as i128)
    }

    pub fn trace(&self) -> i64 {
        narrow(self.a as i128 + self.d as i128)
    }

    pub fn is_sl2(&self) -> bool {
        self.det() == 1
    }

    /// Inverse for matrices of determinant +1 or -1; `None` otherwise.
    pub fn inverse(&self) -> Option<Mat2> {
        match self.det() {
            1 => Some(Mat2::new(self.d, -self.b, -self.c, self.a)),
            -1 => Some(Mat2::new(-self.d, self.b, self.c, -self.a)),
            _ => None,
        }
    }

    /// Integer power; negative exponents require |det| = 1.
    pub fn pow(&self, k: i64) -> Mat2 {
        let base = if k < 0 {
            self.inverse()
                .expect("negative power of a matrix with |det| != 1")
        } else {
            *self
        };
        let mut acc = Mat2::IDENTITY;
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * sq;
            }
            e >>= 1;
            if e > 0 {
                sq = sq * sq;
            }
        }
        acc
    }

    /// x * self * x^{-1}; `x` must have |det| = 1.
    pub fn conjugated_by(&self, x: &Mat2) -> Mat2 {
        let xi = x.inverse().expect("conjugator must have |det| = 1");
        *x * *self * xi
    }

    fn abs_sum(&self) -> u64 {
        self.a.unsigned_abs()
            + self.b.unsigned_abs()
            + self.c.unsigned_abs()
            + self.d.unsigned_abs()
    }

    fn in_box(&self, bound: i64) -> bool {
        self.a.abs() <= bound
            && self.b.abs() <= bound
            && self.c.abs() <= bound
            && self.d.abs() <= bound
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let (a1, b1, c1, d1) = (
            self.a as i128,
            self.b as i128,
            self.c as i128,
            self.d as i128,
        );
        let (a2, b2, c2, d2) = (rhs.a as i128, rhs.b as i128, rhs.c as i128, rhs.d as i128);
        Mat2::new(
            narrow(a1 * a2 + b1 * c2),
            narrow(a1 * b2 + b1 * d2),
            narrow(c1 * a2 + d1 * c2),
            narrow(c1 * b2 + d1 * d2),
        )
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        Mat2::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Mat2 {
    type Err = MatrixError;

    /// Accepts either `a,b;c,d` or `[[a,b],[c,d]]`, whitespace tolerated.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|ch| !ch.is_whitespace()).collect();
        let err = |reason: &str| MatrixError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let rows: Vec<&str> = if compact.starts_with("[[") {
            let inner = compact
                .strip_prefix("[[")
                .and_then(|t| t.strip_suffix("]]"))
                .ok_or_else(|| err("expected [[a,b],[c,d]]"))?;
            inner.split("],[").collect()
        } else {
            compact.split(';').collect()
        };
        if rows.len() != 2 {
            return Err(err("expected two rows"));
        }
        let mut vals = [0i64; 4];
        for (i, row) in rows.iter().enumerate() {
            let cells: Vec<&str> = row.split(',').collect();
            if cells.len() != 2 {
                return Err(err("expected two entries per row"));
            }
            for (j, cell) in cells.iter().enumerate() {
                vals[2 * i + j] = cell
                    .parse::<i64>()
                    .map_err(|_| err(&format!("bad integer {cell:?}")))?;
            }
        }
        Ok(Mat2::new(vals[0], vals[1], vals[2], vals[3]))
    }
}

impl Serialize for Mat2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Mat2 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Trace classification of a monodromy: |trace| < 2, = 2, > 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TraceKind {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TraceSign {
    Positive,
    Negative,
    ZeroTrace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleClass {
    pub kind: TraceKind,
    pub sign: TraceSign,
    pub trace: i64,
}

/// Classify a monodromy by trace; rejects matrices outside SL(2,Z).
pub fn classify(a: &Mat2) -> Result<BundleClass, MatrixError> {
    let det = a.det();
    if det != 1 {
        return Err(MatrixError::NotSL2 { det });
    }
    let trace = a.trace();
    let kind = match trace.abs() {
        0 | 1 => TraceKind::Elliptic,
        2 => TraceKind::Parabolic,
        _ => TraceKind::Hyperbolic,
    };
    let sign = match trace.signum() {
        1 => TraceSign::Positive,
        -1 => TraceSign::Negative,
        _ => TraceSign::ZeroTrace,
    };
    Ok(BundleClass { kind, sign, trace })
}

/// Generator letter of a word in SL(2,Z).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gen {
    S,
    T,
}

/// Evaluate a word of S- and T-powers, multiplied in written order:
/// the word [(T,-3),(S,1)] evaluates to T^{-3} * S.
pub fn word_eval(word: &[(Gen, i64)]) -> Mat2 {
    word.iter().fold(Mat2::IDENTITY, |acc, &(gen, exp)| {
        let base = match gen {
            Gen::S => Mat2::S,
            Gen::T => Mat2::T,
        };
        acc * base.pow(exp)
    })
}

/// A primitive slope (p,q) on the torus, gcd(|p|,|q|) = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimitiveSlope {
    p: i64,
    q: i64,
}

fn gcd(mut x: u64, mut y: u64) -> u64 {
    while y != 0 {
        (x, y) = (y, x % y);
    }
    x
}

impl PrimitiveSlope {
    pub fn new(p: i64, q: i64) -> Result<Self, MatrixError> {
        if gcd(p.unsigned_abs(), q.unsigned_abs()) != 1 {
            return Err(MatrixError::NotPrimitive { p, q });
        }
        Ok(PrimitiveSlope { p, q })
    }

    /// The horizontal slope (1,0).
    pub fn mu() -> Self {
        PrimitiveSlope { p: 1, q: 0 }
    }

    /// The vertical slope (0,1).
    pub fn lambda() -> Self {
        PrimitiveSlope { p: 0, q: 1 }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }
}

/// The transvection x |-> x - <x,v> v along v = (p,q), where
/// <u,v> = u_x v_y - u_y v_x. Closed form [[1-pq, p^2],[-q^2, 1+pq]];
/// always determinant 1 and trace 2. The slope (1,0) gives T and (0,1)
/// gives [[1,0],[-1,1]].
pub fn dehn_twist_matrix(v: &PrimitiveSlope) -> Mat2 {
    let (p, q) = (v.p as i128, v.q as i128);
    Mat2::new(
        narrow(1 - p * q),
        narrow(p * p),
        narrow(-q * q),
        narrow(1 + p * q),
    )
}

/// Result of a Legendrian surgery on a vertical Legendrian curve of
/// slope L: the monodromy is multiplied on the right by the twist along L.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurgeryOutcome {
    pub monodromy: Mat2,
    pub warnings: Vec<String>,
}

fn negative_nonelliptic(a: &Mat2) -> bool {
    matches!(
        classify(a),
        Ok(BundleClass {
            kind: TraceKind::Parabolic | TraceKind::Hyperbolic,
            sign: TraceSign::Negative,
            ..
        })
    )
}

/// Monodromy after Legendrian surgery along the slope `l`: `a * twist(l)`.
///
/// The surgery description assumes the input bundle is negative parabolic
/// or negative hyperbolic; violations are reported as warnings, not
/// errors, so exploratory computations stay possible.
pub fn legendrian_surgery_monodromy(
    a: &Mat2,
    l: &PrimitiveSlope,
) -> Result<SurgeryOutcome, MatrixError> {
    let det = a.det();
    if det != 1 {
        return Err(MatrixError::NotSL2 { det });
    }
    let mut warnings = Vec::new();
    if !negative_nonelliptic(a) {
        warnings.push(format!(
            "input monodromy {a} is not negative parabolic or negative hyperbolic; \
             the surgery hypotheses do not apply"
        ));
    }
    let monodromy = *a * dehn_twist_matrix(l);
    if !negative_nonelliptic(&monodromy) {
        warnings.push(format!(
            "resulting monodromy {monodromy} is not negative parabolic or negative hyperbolic"
        ));
    }
    Ok(SurgeryOutcome {
        monodromy,
        warnings,
    })
}

/// Monodromy of the fiberwise cyclic cover of degree k >= 1.
pub fn cover_monodromy(a: &Mat2, k: u32) -> Mat2 {
    assert!(k >= 1, "cover degree must be at least 1");
    a.pow(k as i64)
}

/// Deterministic tie-break key: entries ordered by absolute value with
/// positive before negative, after the total absolute sum. Under this
/// order the identity beats -I, so a self-conjugacy search returns I.
fn entry_key(x: i64) -> (u64, bool) {
    (x.unsigned_abs(), x < 0)
}

fn witness_key(m: &Mat2) -> (u64, (u64, bool), (u64, bool), (u64, bool), (u64, bool)) {
    (
        m.abs_sum(),
        entry_key(m.a),
        entry_key(m.b),
        entry_key(m.c),
        entry_key(m.d),
    )
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        let g = a.abs();
        let s = if a < 0 { -1 } else { 1 };
        return (g, s, 0);
    }
    let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
    (g, y, x - (a.div_euclid(b)) * y)
}

/// Search for X with X A X^{-1} = B, det X = 1, and every |entry| <= bound.
///
/// Both inputs must have determinant +1. Returns the minimal witness under
/// the deterministic key (sum of |entries|, then entrywise by absolute
/// value with positive first), or `None` when no witness exists within the
/// box. `None` proves nothing beyond the box: it is not a non-conjugacy
/// certificate.
///
/// The box is not enumerated pointwise. For each pair (x1,x2) of top-row
/// entries the relation X A = B X is linear in the bottom row, so the
/// candidates on each slice are recovered by an exact integer solve; this
/// is equivalent to full enumeration but stays fast when nothing exists.
pub fn conjugacy_witness_search(a: &Mat2, b: &Mat2, bound: i64) -> Option<Mat2> {
    assert!(
        a.is_sl2() && b.is_sl2(),
        "conjugacy search requires determinant +1"
    );
    assert!(bound >= 1, "entry bound must be at least 1");

    if *a == Mat2::IDENTITY || *a == -Mat2::IDENTITY {
        if b == a {
            // Everything commutes; the minimal det-1 matrix in any box is S.
            return Some(Mat2::S);
        }
        // Conjugation fixes scalar matrices, so no witness exists at all.
        return None;
    }

    let (a1, a2, a3, a4) = (a.a as i128, a.b as i128, a.c as i128, a.d as i128);
    let (b1, b2, b3, b4) = (b.a as i128, b.b as i128, b.c as i128, b.d as i128);

    // Rows of the linear system in (x3, x4), given (x1, x2):
    //   m1*x3 + m2*x4 = r(x1, x2)
    let rows: [(i128, i128); 4] = [(b2, 0), (0, b2), (a1 - b4, a3), (a2, a4 - b4)];
    let rhs = |k: usize, x1: i128, x2: i128| -> i128 {
        match k {
            0 => x1 * (a1 - b1) + x2 * a3,
            1 => x1 * a2 + x2 * (a4 - b1),
            2 => b3 * x1,
            _ => b3 * x2,
        }
    };

    // A pair of rows with nonzero cross determinant pins (x3, x4) uniquely.
    let mut pair: Option<(usize, usize)> = None;
    'outer: for i in 0..4 {
        for j in (i + 1)..4 {
            if rows[i].0 * rows[j].1 - rows[i].1 * rows[j].0 != 0 {
                pair = Some((i, j));
                break 'outer;
            }
        }
    }
    // A != +-I guarantees some row is nonzero.
    let base = (0..4)
        .find(|&k| rows[k] != (0, 0))
        .expect("nonscalar matrix yields a nonzero constraint row");

    let mut best: Option<Mat2> = None;
    let mut consider = |x: Mat2| {
        if x.det() != 1 || !x.in_box(bound) || x * *a != *b * x {
            return;
        }
        if best.map_or(true, |cur| witness_key(&x) < witness_key(&cur)) {
            best = Some(x);
        }
    };

    for x1 in -bound..=bound {
        for x2 in -bound..=bound {
            let (x1i, x2i) = (x1 as i128, x2 as i128);
            match pair {
                Some((i, j)) => {
                    let (mi1, mi2) = rows[i];
                    let (mj1, mj2) = rows[j];
                    let (ri, rj) = (rhs(i, x1i, x2i), rhs(j, x1i, x2i));
                    let det = mi1 * mj2 - mi2 * mj1;
                    let num3 = ri * mj2 - rj * mi2;
                    let num4 = mi1 * rj - mj1 * ri;
                    if num3 % det != 0 || num4 % det != 0 {
                        continue;
                    }
                    let (x3, x4) = (num3 / det, num4 / det);
                    if x3.abs() > bound as i128 || x4.abs() > bound as i128 {
                        continue;
                    }
                    consider(Mat2::new(x1, x2, x3 as i64, x4 as i64));
                }
                None => {
                    // All rows are proportional to the base row.
                    let (m1, m2) = rows[base];
                    let r = rhs(base, x1i, x2i);
                    let consistent = (0..4).all(|k| {
                        let (k1, k2) = rows[k];
                        let rk = rhs(k, x1i, x2i);
                        k1 * r == m1 * rk && k2 * r == m2 * rk
                    });
                    if !consistent {
                        continue;
                    }
                    let (g, s, t) = ext_gcd(m1, m2);
                    if r % g != 0 {
                        continue;
                    }
                    let scale = r / g;
                    let (x3p, x4p) = (s * scale, t * scale);
                    let (h1, h2) = (m2 / g, -m1 / g);
                    // Intersect the box constraints on x3p + k*h1 and x4p + k*h2.
                    let range = |p: i128, h: i128| -> Option<(i128, i128)> {
                        if h == 0 {
                            if p.abs() <= bound as i128 {
                                Some((i128::MIN / 4, i128::MAX / 4))
                            } else {
                                None
                            }
                        } else {
                            let lo = (-(bound as i128) - p).div_euclid(h.abs())
                                + if (-(bound as i128) - p).rem_euclid(h.abs()) != 0 {
                                    1
                                } else {
                                    0
                                };
                            let hi = ((bound as i128) - p).div_euclid(h.abs());
                            if h > 0 {
                                Some((lo, hi))
                            } else {
                                Some((-hi, -lo))
                            }
                        }
                    };
                    let (lo1, hi1) = match range(x3p, h1) {
                        Some(r) => r,
                        None => continue,
                    };
                    let (lo2, hi2) = match range(x4p, h2) {
                        Some(r) => r,
                        None => continue,
                    };
                    let (lo, hi) = (lo1.max(lo2), hi1.min(hi2));
                    for k in lo..=hi {
                        let (x3, x4) = (x3p + k * h1, x4p + k * h2);
                        consider(Mat2::new(x1, x2, x3 as i64, x4 as i64));
                    }
                }
            }
        }
    }
    best
}

/// How a diffeomorphism between two bundles was certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiffeoRoute {
    /// Monodromies are conjugate.
    Direct,
    /// One monodromy is conjugate to J B^{-1} J^{-1}, matching the
    /// orientation reverse of the other bundle.
    OrientationReversed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiffeoVerdict {
    Yes { route: DiffeoRoute, detail: String },
    No { detail: String },
    Unknown,
}

enum ConjDecision {
    Yes(String),
    No(String),
    Unknown,
}

/// Decide conjugacy in SL(2,Z) using complete invariants where they exist:
/// trace, the parabolic (sign, n) normal form, and the negative hyperbolic
/// circular word. Elliptic pairs fall back to a bounded witness search and
/// may come back Unknown.
fn sl2z_conjugate(a: &Mat2, c: &Mat2) -> ConjDecision {
    use crate::seqcalc;

    if a.trace() != c.trace() {
        return ConjDecision::No(format!("traces differ: {} vs {}", a.trace(), c.trace()));
    }
    let tr = a.trace();
    if tr.abs() == 2 {
        let na = seqcalc::parabolic_normal_form(a).expect("trace +-2 matrix");
        let nc = seqcalc::parabolic_normal_form(c).expect("trace +-2 matrix");
        return if na.sign == nc.sign && na.n == nc.n {
            ConjDecision::Yes(format!(
                "shared parabolic normal form {}T^{}",
                if na.sign < 0 { "-" } else { "" },
                na.n
            ))
        } else {
            ConjDecision::No(format!(
                "parabolic normal forms differ: ({},{}) vs ({},{})",
                na.sign, na.n, nc.sign, nc.n
            ))
        };
    }
    if tr.abs() >= 3 {
        // Negative hyperbolic words are complete invariants; positive
        // traces reduce to the negatives of the same matrices.
        let (na, nc) = if tr <= -3 { (*a, *c) } else { (-*a, -*c) };
        let budget = seqcalc::DecomposeBudget::default();
        let da = seqcalc::decompose_negative_hyperbolic(&na, &budget);
        let dc = seqcalc::decompose_negative_hyperbolic(&nc, &budget);
        if let (
            Ok(seqcalc::Decomposition::Found { seq: sa, .. }),
            Ok(seqcalc::Decomposition::Found { seq: sc, .. }),
        ) = (&da, &dc)
        {
            return if sa == sc {
                ConjDecision::Yes(format!("shared hyperbolic word ({sa})"))
            } else {
                ConjDecision::No(format!("hyperbolic words differ: ({sa}) vs ({sc})"))
            };
        }
        // Budget ran out; fall through to a direct witness search.
    }
    match conjugacy_witness_search(a, c, 50) {
        Some(x) => ConjDecision::Yes(format!("explicit conjugator {x}")),
        None => ConjDecision::Unknown,
    }
}

/// Are the bundles with monodromies A and B diffeomorphic?
///
/// Yes when A is conjugate to B (orientation match) or to J B^{-1} J^{-1}
/// (orientation reverse); No when complete invariants rule out both;
/// Unknown when neither could be certified.
pub fn bundles_diffeomorphic(a: &Mat2, b: &Mat2) -> Result<DiffeoVerdict, MatrixError> {
    for m in [a, b] {
        let det = m.det();
        if det != 1 {
            return Err(MatrixError::NotSL2 { det });
        }
    }
    let twisted = Mat2::J * b.inverse().unwrap() * Mat2::J;
    let direct = sl2z_conjugate(a, b);
    if let ConjDecision::Yes(detail) = direct {
        return Ok(DiffeoVerdict::Yes {
            route: DiffeoRoute::Direct,
            detail,
        });
    }
    let reversed = sl2z_conjugate(a, &twisted);
    if let ConjDecision::Yes(detail) = reversed {
        return Ok(DiffeoVerdict::Yes {
            route: DiffeoRoute::OrientationReversed,
            detail,
        });
    }
    match (direct, reversed) {
        (ConjDecision::No(d1), ConjDecision::No(d2)) => Ok(DiffeoVerdict::No {
            detail: format!("{d1}; against the reverse: {d2}"),
        }),
        _ => Ok(DiffeoVerdict::Unknown),
    }
}
