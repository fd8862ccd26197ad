//! Dehn twist words on the genus-one surface with two boundary components.
//!
//! Words are sequences of twists along five curves: the two boundary
//! parallels d1, d2, a pair of disjoint nonseparating curves a1, a2, and
//! a curve e meeting each of a1, a2 once. Rewrite moves implement the
//! relations available in this mapping class group: commutations for
//! disjoint curves, braid moves for curves meeting once, the chain
//! relation t_d1 t_d2 = (t_a1 t_e t_a2)^4, and free cancellation.
//!
//! A derivation is a start word, a move script, and checkpoint words; it
//! verifies when a literal replay of the script passes through every
//! checkpoint in order. The factorization recognizer parses a word into
//! blocks u t_c u^{-1}, each a right-handed twist conjugated by an
//! arbitrary prefix; recognition is syntactic and one-sided, so a
//! NotRecognized answer never claims the word is not such a product.
//! Every letter also has a 3x3 homological shadow, a transvection
//! x -> x - <x,[c]>[c] in the basis ([a1], [e], [d1]); shadows are
//! invariant under all moves and give a cheap necessary check.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum McgError {
    #[error("cannot parse word token {token:?}: {reason}")]
    WordParse { token: String, reason: String },
    #[error("invalid move at position {position}: {reason}")]
    InvalidMove { position: usize, reason: String },
    #[error("script line {line}: {reason}")]
    ScriptParse { line: usize, reason: String },
}

/// The five twist curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Curve {
    A1,
    E,
    A2,
    D1,
    D2,
}

impl Curve {
    pub const ALL: [Curve; 5] = [Curve::A1, Curve::E, Curve::A2, Curve::D1, Curve::D2];

    pub fn name(self) -> &'static str {
        match self {
            Curve::A1 => "a1",
            Curve::E => "e",
            Curve::A2 => "a2",
            Curve::D1 => "d1",
            Curve::D2 => "d2",
        }
    }

    fn parse(s: &str) -> Option<Curve> {
        Curve::ALL.into_iter().find(|c| c.name() == s)
    }

    /// Boundary-parallel curves are central: they commute with everything.
    pub fn is_central(self) -> bool {
        matches!(self, Curve::D1 | Curve::D2)
    }
}

/// Geometric intersection number between two of the five curves.
pub fn intersection(x: Curve, y: Curve) -> u32 {
    use Curve::*;
    match (x, y) {
        (A1, E) | (E, A1) | (A2, E) | (E, A2) => 1,
        _ => 0,
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One twist: a curve and a direction (+1 right-handed, -1 left-handed).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Letter {
    pub curve: Curve,
    pub positive: bool,
}

impl Letter {
    pub fn new(curve: Curve, positive: bool) -> Self {
        Letter { curve, positive }
    }

    pub fn inverse(self) -> Self {
        Letter {
            curve: self.curve,
            positive: !self.positive,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.curve)
        } else {
            write!(f, "{}^-1", self.curve)
        }
    }
}

/// A product of twists, leftmost letter applied first in display order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TwistWord {
    letters: Vec<Letter>,
}

impl TwistWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        TwistWord { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> TwistWord {
        TwistWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Fully cancel adjacent mutually inverse letters.
    pub fn free_reduced(&self) -> TwistWord {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if stack.last().copied() == Some(l.inverse()) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        TwistWord { letters: stack }
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl std::str::FromStr for TwistWord {
    type Err = McgError;

    /// Whitespace-separated letters, with `^k` repetition: "a1^-2 e d1".
    fn from_str(s: &str) -> Result<Self, McgError> {
        let mut letters = Vec::new();
        for token in s.split_whitespace() {
            letters.extend(parse_token(token)?);
        }
        Ok(TwistWord { letters })
    }
}

impl Serialize for TwistWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

fn parse_token(token: &str) -> Result<Vec<Letter>, McgError> {
    let bad = |reason: &str| McgError::WordParse {
        token: token.to_string(),
        reason: reason.to_string(),
    };
    let (name, exp) = match token.split_once('^') {
        None => (token, 1i64),
        Some((name, e)) => (
            name,
            e.parse::<i64>()
                .map_err(|_| bad("exponent is not an integer"))?,
        ),
    };
    let curve = Curve::parse(name).ok_or_else(|| bad("unknown curve"))?;
    let letter = Letter::new(curve, exp > 0);
    Ok(vec![letter; exp.unsigned_abs() as usize])
}

/// The twelve letters of (t_a1 t_e t_a2)^4.
fn chain_body() -> Vec<Letter> {
    let period = [Curve::A1, Curve::E, Curve::A2];
    (0..12).map(|i| Letter::new(period[i % 3], true)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MoveKind {
    /// Swap two adjacent letters on disjoint curves.
    Commute,
    /// t_x t_y t_x -> t_y t_x t_y for curves meeting once, all three
    /// letters with the same direction.
    Braid,
    /// d1 d2 -> (a1 e a2)^4, both boundary letters right-handed.
    ChainExpand,
    /// (a1 e a2)^4 -> d1 d2.
    ChainContract,
    /// Swap a boundary-parallel letter past its neighbor.
    CentralSwap,
    /// Delete an adjacent inverse pair.
    FreeReduce,
    /// Insert letter * letter^-1.
    FreeInsert,
}

/// One rewrite applied at a 0-based position of the current word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RewriteMove {
    pub kind: MoveKind,
    pub position: usize,
    /// The inserted letter; required exactly for FreeInsert.
    pub letter: Option<Letter>,
}

impl RewriteMove {
    pub fn new(kind: MoveKind, position: usize) -> Self {
        assert!(kind != MoveKind::FreeInsert, "FreeInsert needs a letter");
        RewriteMove {
            kind,
            position,
            letter: None,
        }
    }

    pub fn insert(position: usize, letter: Letter) -> Self {
        RewriteMove {
            kind: MoveKind::FreeInsert,
            position,
            letter: Some(letter),
        }
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl fmt::Display for RewriteMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind {
            MoveKind::Commute => "COMMUTE",
            MoveKind::Braid => "BRAID",
            MoveKind::ChainExpand => "EXPAND",
            MoveKind::ChainContract => "CONTRACT",
            MoveKind::CentralSwap => "CENTRAL",
            MoveKind::FreeReduce => "REDUCE",
            MoveKind::FreeInsert => "INSERT",
        };
        write!(f, "{tag}@{}", self.position)?;
        if let Some(l) = self.letter {
            write!(f, ":{l}")?;
        }
        Ok(())
    }
}

/// Apply one move, returning the rewritten word.
pub fn apply_move(word: &TwistWord, mv: &RewriteMove) -> Result<TwistWord, McgError> {
    let l = word.letters();
    let n = l.len();
    let p = mv.position;
    let fail = |reason: String| McgError::InvalidMove {
        position: p,
        reason,
    };
    let span = |k: usize| -> Result<(), McgError> {
        if p + k > n {
            Err(fail(format!(
                "needs {k} letters at position {p}, word has {n}"
            )))
        } else {
            Ok(())
        }
    };
    let mut out = l.to_vec();
    match mv.kind {
        MoveKind::Commute => {
            span(2)?;
            if intersection(l[p].curve, l[p + 1].curve) != 0 {
                return Err(fail(format!(
                    "{} and {} intersect; they do not commute",
                    l[p].curve,
                    l[p + 1].curve
                )));
            }
            out.swap(p, p + 1);
        }
        MoveKind::CentralSwap => {
            span(2)?;
            if !l[p].curve.is_central() && !l[p + 1].curve.is_central() {
                return Err(fail("neither letter is boundary-parallel".to_string()));
            }
            out.swap(p, p + 1);
        }
        MoveKind::Braid => {
            span(3)?;
            let (x, y, z) = (l[p], l[p + 1], l[p + 2]);
            if x.curve != z.curve {
                return Err(fail("outer letters are on different curves".to_string()));
            }
            if intersection(x.curve, y.curve) != 1 {
                return Err(fail(format!(
                    "{} and {} do not intersect once",
                    x.curve, y.curve
                )));
            }
            if x.positive != y.positive || y.positive != z.positive {
                return Err(fail("mixed twist directions in the triple".to_string()));
            }
            out[p] = y;
            out[p + 1] = x;
            out[p + 2] = y;
        }
        MoveKind::ChainExpand => {
            span(2)?;
            let want = [Letter::new(Curve::D1, true), Letter::new(Curve::D2, true)];
            if l[p..p + 2] != want {
                return Err(fail("expected the pair d1 d2".to_string()));
            }
            out.splice(p..p + 2, chain_body());
        }
        MoveKind::ChainContract => {
            span(12)?;
            if l[p..p + 12] != chain_body()[..] {
                return Err(fail("expected (a1 e a2)^4".to_string()));
            }
            out.splice(
                p..p + 12,
                [Letter::new(Curve::D1, true), Letter::new(Curve::D2, true)],
            );
        }
        MoveKind::FreeReduce => {
            span(2)?;
            if l[p + 1] != l[p].inverse() {
                return Err(fail("letters are not mutually inverse".to_string()));
            }
            out.drain(p..p + 2);
        }
        MoveKind::FreeInsert => {
            if p > n {
                return Err(fail(format!("insertion point {p} beyond word length {n}")));
            }
            let letter = mv
                .letter
                .ok_or_else(|| fail("no letter given for insertion".to_string()))?;
            out.splice(p..p, [letter, letter.inverse()]);
        }
    }
    Ok(TwistWord::new(out))
}

/// Parse a move script: one move per line as `KIND@POS`, insertion as
/// `INSERT@POS:letter`; `#` starts a comment.
pub fn parse_script(s: &str) -> Result<Vec<RewriteMove>, McgError> {
    let mut moves = Vec::new();
    for (idx, raw) in s.lines().enumerate() {
        let line = idx + 1;
        let bad = |reason: String| McgError::ScriptParse { line, reason };
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let (tag, args) = text
            .split_once('@')
            .ok_or_else(|| bad("expected KIND@POS".to_string()))?;
        let kind = match tag {
            "COMMUTE" => MoveKind::Commute,
            "BRAID" => MoveKind::Braid,
            "EXPAND" => MoveKind::ChainExpand,
            "CONTRACT" => MoveKind::ChainContract,
            "CENTRAL" => MoveKind::CentralSwap,
            "REDUCE" => MoveKind::FreeReduce,
            "INSERT" => MoveKind::FreeInsert,
            other => return Err(bad(format!("unknown move kind {other:?}"))),
        };
        if kind == MoveKind::FreeInsert {
            let (pos, letter_text) = args
                .split_once(':')
                .ok_or_else(|| bad("INSERT needs POS:letter".to_string()))?;
            let position: usize = pos
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad position {pos:?}")))?;
            let letters = parse_token(letter_text.trim()).map_err(|e| bad(e.to_string()))?;
            if letters.len() != 1 {
                return Err(bad("insertion takes a single letter".to_string()));
            }
            moves.push(RewriteMove::insert(position, letters[0]));
        } else {
            let position: usize = args
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad position {args:?}")))?;
            moves.push(RewriteMove {
                kind,
                position,
                letter: None,
            });
        }
    }
    Ok(moves)
}

/// Parse checkpoint words, one per line; `#` starts a comment.
pub fn parse_checkpoints(s: &str) -> Result<Vec<TwistWord>, McgError> {
    let mut out = Vec::new();
    for raw in s.lines() {
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        out.push(text.parse()?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum DerivationOutcome {
    Verified,
    Failed { step: usize, reason: String },
}

/// Replay `script` from `start` and demand that the visited states pass
/// through every checkpoint, in order. The start word itself counts as a
/// visited state.
pub fn verify_derivation(
    start: &TwistWord,
    script: &[RewriteMove],
    checkpoints: &[TwistWord],
) -> DerivationOutcome {
    let mut states = Vec::with_capacity(script.len() + 1);
    states.push(start.clone());
    for (step, mv) in script.iter().enumerate() {
        match apply_move(states.last().expect("nonempty"), mv) {
            Ok(next) => states.push(next),
            Err(e) => {
                return DerivationOutcome::Failed {
                    step,
                    reason: e.to_string(),
                }
            }
        }
    }
    let mut pending = checkpoints.iter().enumerate();
    let mut next = pending.next();
    for state in &states {
        if let Some((_, want)) = next {
            if state == want {
                next = pending.next();
            }
        }
    }
    if let Some((index, word)) = next {
        return DerivationOutcome::Failed {
            step: script.len(),
            reason: format!("checkpoint {index} ({word}) never reached in order"),
        };
    }
    DerivationOutcome::Verified
}

/// One factor u t_c u^{-1}: a right-handed twist conjugated by a prefix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositiveBlock {
    pub prefix: TwistWord,
    pub curve: Curve,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Factorization {
    Positive(Vec<PositiveBlock>),
    NotRecognized,
}

/// Try to parse the free reduction of `word` as a product of blocks
/// u t_c u^{-1}. Backtracking over prefix lengths, shortest first, with
/// a memo of suffix positions that cannot be completed.
pub fn is_positive_factorization(word: &TwistWord) -> Factorization {
    let reduced = word.free_reduced();
    let l = reduced.letters();
    let n = l.len();
    let mut dead = vec![false; n + 1];
    let mut blocks: Vec<PositiveBlock> = Vec::new();

    fn go(l: &[Letter], i: usize, dead: &mut [bool], blocks: &mut Vec<PositiveBlock>) -> bool {
        let n = l.len();
        if i == n {
            return true;
        }
        if dead[i] {
            return false;
        }
        let mut t = 0;
        while i + 2 * t + 1 <= n {
            let core = l[i + t];
            let mirror_ok =
                core.positive && (0..t).all(|j| l[i + t + 1 + j] == l[i + t - 1 - j].inverse());
            if mirror_ok {
                blocks.push(PositiveBlock {
                    prefix: TwistWord::new(l[i..i + t].to_vec()),
                    curve: core.curve,
                });
                if go(l, i + 2 * t + 1, dead, blocks) {
                    return true;
                }
                blocks.pop();
            }
            t += 1;
        }
        dead[i] = true;
        false
    }

    if go(l, 0, &mut dead, &mut blocks) {
        Factorization::Positive(blocks)
    } else {
        Factorization::NotRecognized
    }
}

/// 3x3 integer matrix acting on H_1 of the surface in the basis
/// ([a1], [e], [d1]).
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct ShadowMatrix(pub [[i64; 3]; 3]);

impl ShadowMatrix {
    pub const IDENTITY: ShadowMatrix = ShadowMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]]);

    pub fn mul(&self, other: &ShadowMatrix) -> ShadowMatrix {
        let mut out = [[0i64; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut acc: i128 = 0;
                for k in 0..3 {
                    acc += self.0[i][k] as i128 * other.0[k][j] as i128;
                }
                *cell = i64::try_from(acc).expect("shadow entry exceeds 64 bits");
            }
        }
        ShadowMatrix(out)
    }

    pub fn det(&self) -> i64 {
        let m = &self.0;
        let term = |a: i64, b: i64, c: i64, d: i64| a as i128 * d as i128 - b as i128 * c as i128;
        let acc = m[0][0] as i128 * term(m[1][1], m[1][2], m[2][1], m[2][2])
            - m[0][1] as i128 * term(m[1][0], m[1][2], m[2][0], m[2][2])
            + m[0][2] as i128 * term(m[1][0], m[1][1], m[2][0], m[2][1]);
        i64::try_from(acc).expect("shadow determinant exceeds 64 bits")
    }
}

impl fmt::Display for ShadowMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .0
            .iter()
            .map(|r| format!("[{},{},{}]", r[0], r[1], r[2]))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

impl fmt::Debug for ShadowMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for ShadowMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Shadow of a single right-handed twist: the transvection
/// x -> x - <x,[c]>[c] with <x,v> = x_a v_b - x_b v_a, where
/// [a1] = (1,0,0), [e] = (0,1,0), [a2] = (1,0,1), [d1] = (0,0,1),
/// [d2] = (0,0,-1).
fn curve_shadow(curve: Curve) -> ShadowMatrix {
    match curve {
        Curve::A1 => ShadowMatrix([[1, 1, 0], [0, 1, 0], [0, 0, 1]]),
        Curve::E => ShadowMatrix([[1, 0, 0], [-1, 1, 0], [0, 0, 1]]),
        Curve::A2 => ShadowMatrix([[1, 1, 0], [0, 1, 0], [0, 1, 1]]),
        Curve::D1 | Curve::D2 => ShadowMatrix::IDENTITY,
    }
}

fn letter_shadow(letter: Letter) -> ShadowMatrix {
    let m = curve_shadow(letter.curve);
    if letter.positive {
        m
    } else {
        // Transvections invert as M^-1 = 2I - M.
        let mut inv = [[0i64; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                inv[i][j] = if i == j { 2 - m.0[i][j] } else { -m.0[i][j] };
            }
        }
        ShadowMatrix(inv)
    }
}

/// Product of the per-letter shadows, in word order.
pub fn homological_shadow(word: &TwistWord) -> ShadowMatrix {
    word.letters()
        .iter()
        .fold(ShadowMatrix::IDENTITY, |acc, &l| acc.mul(&letter_shadow(l)))
}

/// The derivation shipped with the crate: monodromy of the twisting -4
/// parabolic bundle rewritten into four right-handed blocks.
pub fn bundled_derivation() -> (TwistWord, Vec<RewriteMove>, Vec<TwistWord>) {
    let word = include_str!("../fixtures/derivation_minus4.word")
        .trim()
        .parse()
        .expect("bundled word parses");
    let moves = parse_script(include_str!("../fixtures/derivation_minus4.moves"))
        .expect("bundled script parses");
    let checkpoints = parse_checkpoints(include_str!("../fixtures/derivation_minus4.checkpoints"))
        .expect("bundled checkpoints parse");
    (word, moves, checkpoints)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn word(s: &str) -> TwistWord {
        s.parse().expect("test word parses")
    }

    #[test]
    fn parse_and_display() {
        let w = word("a1 a1^-1 e d1 a2^-1");
        assert_eq!(w.len(), 5);
        assert_eq!(w.to_string(), "a1 a1^-1 e d1 a2^-1");
        assert_eq!(
            word("a1^-3").letters(),
            vec![Letter::new(Curve::A1, false); 3]
        );
        assert_eq!(word("e^2").letters(), vec![Letter::new(Curve::E, true); 2]);
        assert!(word("a2^0").is_empty());
        assert!("b7".parse::<TwistWord>().is_err());
        assert!("a1^x".parse::<TwistWord>().is_err());
    }

    #[test]
    fn intersection_table() {
        assert_eq!(intersection(Curve::A1, Curve::E), 1);
        assert_eq!(intersection(Curve::A2, Curve::E), 1);
        assert_eq!(intersection(Curve::A1, Curve::A2), 0);
        for c in Curve::ALL {
            assert_eq!(intersection(c, c), 0);
            assert_eq!(intersection(Curve::D1, c), 0);
            assert_eq!(intersection(Curve::D2, c), 0);
            for d in Curve::ALL {
                assert_eq!(intersection(c, d), intersection(d, c));
            }
        }
    }

    #[test]
    fn free_reduction() {
        assert_eq!(word("a1 e e^-1 a1^-1 a2").free_reduced(), word("a2"));
        assert_eq!(word("d1 d1^-1").free_reduced(), TwistWord::default());
        assert_eq!(word("a1 e a2").free_reduced(), word("a1 e a2"));
    }

    #[test]
    fn commute_and_central() {
        let w = word("a1 a2");
        let got = apply_move(&w, &RewriteMove::new(MoveKind::Commute, 0)).unwrap();
        assert_eq!(got, word("a2 a1"));
        let err = apply_move(&word("a1 e"), &RewriteMove::new(MoveKind::Commute, 0));
        assert!(matches!(
            err,
            Err(McgError::InvalidMove { position: 0, .. })
        ));
        let got = apply_move(&word("d2 e"), &RewriteMove::new(MoveKind::CentralSwap, 0)).unwrap();
        assert_eq!(got, word("e d2"));
        let err = apply_move(&word("a1 e"), &RewriteMove::new(MoveKind::CentralSwap, 0));
        assert!(err.is_err());
    }

    #[test]
    fn braid_moves() {
        let got = apply_move(&word("e a1 e"), &RewriteMove::new(MoveKind::Braid, 0)).unwrap();
        assert_eq!(got, word("a1 e a1"));
        let got = apply_move(
            &word("a2^-1 e^-1 a2^-1"),
            &RewriteMove::new(MoveKind::Braid, 0),
        )
        .unwrap();
        assert_eq!(got, word("e^-1 a2^-1 e^-1"));
        // Disjoint curves have no braid relation.
        assert!(apply_move(&word("a1 a2 a1"), &RewriteMove::new(MoveKind::Braid, 0)).is_err());
        // Mixed directions are rejected.
        assert!(apply_move(&word("e a1^-1 e"), &RewriteMove::new(MoveKind::Braid, 0)).is_err());
        assert!(apply_move(&word("e a1"), &RewriteMove::new(MoveKind::Braid, 0)).is_err());
    }

    #[test]
    fn chain_moves() {
        let start = word("d1 d2");
        let expanded = apply_move(&start, &RewriteMove::new(MoveKind::ChainExpand, 0)).unwrap();
        assert_eq!(expanded, word("a1 e a2 a1 e a2 a1 e a2 a1 e a2"));
        let back = apply_move(&expanded, &RewriteMove::new(MoveKind::ChainContract, 0)).unwrap();
        assert_eq!(back, start);
        assert!(apply_move(&word("d2 d1"), &RewriteMove::new(MoveKind::ChainExpand, 0)).is_err());
        assert!(apply_move(
            &word("a1 e a2"),
            &RewriteMove::new(MoveKind::ChainContract, 0)
        )
        .is_err());
    }

    #[test]
    fn reduce_and_insert() {
        let got = apply_move(
            &word("a1 a1^-1"),
            &RewriteMove::new(MoveKind::FreeReduce, 0),
        )
        .unwrap();
        assert!(got.is_empty());
        let got = apply_move(
            &word("a1^-1 a1"),
            &RewriteMove::new(MoveKind::FreeReduce, 0),
        )
        .unwrap();
        assert!(got.is_empty());
        assert!(apply_move(&word("a1 a1"), &RewriteMove::new(MoveKind::FreeReduce, 0)).is_err());
        let got = apply_move(
            &word("e"),
            &RewriteMove::insert(1, Letter::new(Curve::A2, false)),
        )
        .unwrap();
        assert_eq!(got, word("e a2^-1 a2"));
        assert!(apply_move(
            &word("e"),
            &RewriteMove::insert(5, Letter::new(Curve::A2, false))
        )
        .is_err());
    }

    #[test]
    fn script_parsing() {
        let script =
            parse_script("# header\nCOMMUTE@5\n\nINSERT@2:a1^-1 # tail\nBRAID@0\n").unwrap();
        assert_eq!(script.len(), 3);
        assert_eq!(script[0], RewriteMove::new(MoveKind::Commute, 5));
        assert_eq!(
            script[1],
            RewriteMove::insert(2, Letter::new(Curve::A1, false))
        );
        assert_eq!(script[0].to_string(), "COMMUTE@5");
        assert_eq!(script[1].to_string(), "INSERT@2:a1^-1");
        assert!(parse_script("SPIN@1").is_err());
        assert!(parse_script("COMMUTE@x").is_err());
        assert!(parse_script("INSERT@1:a1^2").is_err());
    }

    #[test]
    fn derivation_replay() {
        let w = word("a1 a2");
        assert_eq!(
            verify_derivation(&w, &[], &[w.clone()]),
            DerivationOutcome::Verified
        );
        let missed = verify_derivation(&w, &[], &[word("a2 a1")]);
        assert_eq!(
            missed,
            DerivationOutcome::Failed {
                step: 0,
                reason: "checkpoint 0 (a2 a1) never reached in order".to_string()
            }
        );
        let bad = verify_derivation(&w, &[RewriteMove::new(MoveKind::Braid, 0)], &[]);
        assert!(matches!(bad, DerivationOutcome::Failed { step: 0, .. }));
        // Checkpoints must appear in order: the reversed list fails.
        let script = [RewriteMove::new(MoveKind::Commute, 0)];
        let fwd = verify_derivation(&w, &script, &[w.clone(), word("a2 a1")]);
        assert_eq!(fwd, DerivationOutcome::Verified);
        let rev = verify_derivation(&w, &script, &[word("a2 a1"), w.clone()]);
        assert!(matches!(rev, DerivationOutcome::Failed { .. }));
    }

    #[test]
    fn bundled_derivation_verifies() {
        let (start, moves, checkpoints) = bundled_derivation();
        assert_eq!(start, word("d1 d2 a1^-6 a2^-2"));
        assert_eq!(checkpoints.len(), 4);
        assert_eq!(checkpoints[0], start);
        assert_eq!(
            verify_derivation(&start, &moves, &checkpoints),
            DerivationOutcome::Verified
        );
        // All checkpoints share one homological shadow.
        let shadow = homological_shadow(&start);
        for cp in &checkpoints {
            assert_eq!(homological_shadow(cp), shadow);
        }
    }

    #[test]
    fn bundled_final_word_is_positive() {
        let (_, _, checkpoints) = bundled_derivation();
        let last = checkpoints.last().unwrap();
        match is_positive_factorization(last) {
            Factorization::Positive(blocks) => {
                assert_eq!(blocks.len(), 4);
                assert_eq!(blocks[0].prefix, word("a1^-2"));
                assert_eq!(blocks[0].curve, Curve::E);
                assert!(blocks[1].prefix.is_empty());
                assert_eq!(blocks[1].curve, Curve::A2);
                assert!(blocks[2].prefix.is_empty());
                assert_eq!(blocks[2].curve, Curve::E);
                assert_eq!(blocks[3].prefix, word("a1 a2 a1"));
                assert_eq!(blocks[3].curve, Curve::E);
            }
            other => panic!("expected positive factorization, got {other:?}"),
        }
    }

    #[test]
    fn factorization_examples() {
        match is_positive_factorization(&word("a2")) {
            Factorization::Positive(blocks) => {
                assert_eq!(blocks.len(), 1);
                assert!(blocks[0].prefix.is_empty());
                assert_eq!(blocks[0].curve, Curve::A2);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            is_positive_factorization(&word("e^-1")),
            Factorization::NotRecognized
        );
        assert_eq!(
            is_positive_factorization(&TwistWord::default()),
            Factorization::Positive(vec![])
        );
        // Insertions inside a conjugating prefix do not change recognition.
        let base = word("a1^-2 e a1^2 a2 e a1 a2 a1 e a1^-1 a2^-1 a1^-1");
        let padded = word("a1^-1 d1 d1^-1 a1^-1 e a1^2 a2 e a1 a2 a1 e a1^-1 a2^-1 a1^-1");
        assert_eq!(
            is_positive_factorization(&base),
            is_positive_factorization(&padded)
        );
    }

    #[test]
    fn shadow_matrices() {
        let m_a1 = curve_shadow(Curve::A1);
        let m_e = curve_shadow(Curve::E);
        let m_a2 = curve_shadow(Curve::A2);
        assert_eq!(m_a1.0, [[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(m_e.0, [[1, 0, 0], [-1, 1, 0], [0, 0, 1]]);
        assert_eq!(m_a2.0, [[1, 1, 0], [0, 1, 0], [0, 1, 1]]);
        // Chain relation: (M_a1 M_e M_a2)^4 = I = shadow of d1 d2.
        let c = m_a1.mul(&m_e).mul(&m_a2);
        let c4 = c.mul(&c).mul(&c).mul(&c);
        assert_eq!(c4, ShadowMatrix::IDENTITY);
        assert_eq!(homological_shadow(&word("d1 d2")), ShadowMatrix::IDENTITY);
        // Braid relations hold for both intersecting pairs.
        assert_eq!(m_a1.mul(&m_e).mul(&m_a1), m_e.mul(&m_a1).mul(&m_e));
        assert_eq!(m_a2.mul(&m_e).mul(&m_a2), m_e.mul(&m_a2).mul(&m_e));
        // Disjoint pairs commute.
        assert_eq!(m_a1.mul(&m_a2), m_a2.mul(&m_a1));
    }

    #[test]
    fn shadow_inverse() {
        for c in Curve::ALL {
            for positive in [true, false] {
                let l = Letter::new(c, positive);
                let prod = letter_shadow(l).mul(&letter_shadow(l.inverse()));
                assert_eq!(prod, ShadowMatrix::IDENTITY);
                assert_eq!(letter_shadow(l).det(), 1);
            }
        }
    }

    fn arb_letter() -> impl Strategy<Value = Letter> {
        (0usize..5, any::<bool>()).prop_map(|(i, positive)| Letter::new(Curve::ALL[i], positive))
    }

    proptest! {
        #[test]
        fn moves_preserve_shadow(letters in prop::collection::vec(arb_letter(), 0..9),
                                 ins in arb_letter()) {
            let w = TwistWord::new(letters);
            let shadow = homological_shadow(&w);
            prop_assert_eq!(shadow.det(), 1);
            let kinds = [
                MoveKind::Commute,
                MoveKind::Braid,
                MoveKind::ChainExpand,
                MoveKind::ChainContract,
                MoveKind::CentralSwap,
                MoveKind::FreeReduce,
            ];
            for p in 0..=w.len() {
                for kind in kinds {
                    let mv = RewriteMove { kind, position: p, letter: None };
                    if let Ok(next) = apply_move(&w, &mv) {
                        prop_assert_eq!(homological_shadow(&next), shadow);
                    }
                }
                let next = apply_move(&w, &RewriteMove::insert(p, ins)).unwrap();
                prop_assert_eq!(homological_shadow(&next), shadow);
            }
        }

        #[test]
        fn free_reduction_preserves_shadow(letters in prop::collection::vec(arb_letter(), 0..12)) {
            let w = TwistWord::new(letters);
            prop_assert_eq!(
                homological_shadow(&w.free_reduced()),
                homological_shadow(&w)
            );
        }
    }
}
