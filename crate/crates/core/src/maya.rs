//! Maya diagrams with a movable division, and the Wronskian identities that
//! moving the division encodes.
//!
//! The first diagram carries the type-III seeds (white beads left of the
//! division) and the eigenstates (black beads right of it); the second carries
//! type II (white, left) and type I (black, right). Positions count from 0 next
//! to the division.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{int, rat, AffineExp, ParamPoly, Ring};
use crate::domain::{Domain, Point, Symbolic};
use crate::error::{Error, Result};
use crate::states::{State, StateTuple, StateType};
use crate::wronskian::{compare_quasi, wronskian_in};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MayaDiagram {
    pub left_white: Vec<u32>,
    pub right_black: Vec<u32>,
    pub offset: i64,
}

impl MayaDiagram {
    fn from_sets(mut left_white: Vec<u32>, mut right_black: Vec<u32>, offset: i64) -> Self {
        left_white.sort_unstable();
        right_black.sort_unstable();
        MayaDiagram {
            left_white,
            right_black,
            offset,
        }
    }

    /// Moves the division one bead to the left. A white bead at position 0
    /// crosses into the trivial region; a black one becomes right position 0.
    fn step_left(&mut self) {
        let consumed = self.left_white.first() == Some(&0);
        let left = self.left_white.iter().filter(|&&d| d > 0).map(|d| d - 1).collect();
        let mut right: Vec<u32> = self.right_black.iter().map(|d| d + 1).collect();
        if !consumed {
            right.insert(0, 0);
        }
        *self = Self::from_sets(left, right, self.offset - 1);
    }

    fn step_right(&mut self) {
        let consumed = self.right_black.first() == Some(&0);
        let right = self.right_black.iter().filter(|&&d| d > 0).map(|d| d - 1).collect();
        let mut left: Vec<u32> = self.left_white.iter().map(|d| d + 1).collect();
        if !consumed {
            left.insert(0, 0);
        }
        *self = Self::from_sets(left, right, self.offset + 1);
    }

    /// ASCII rendering: black `*`, white `o`, division `|`. Each side shows at
    /// least five beads and at least two trivial beads past the outermost
    /// nontrivial one.
    pub fn render(&self) -> String {
        let width = |set: &[u32]| set.last().map_or(5, |&m| (m as usize + 3).max(5));
        let lw = width(&self.left_white);
        let rw = width(&self.right_black);
        let mut s = String::from("...");
        for p in (0..lw as u32).rev() {
            s.push(if self.left_white.contains(&p) { 'o' } else { '*' });
        }
        s.push('|');
        for p in 0..rw as u32 {
            s.push(if self.right_black.contains(&p) { '*' } else { 'o' });
        }
        s.push_str("...");
        s
    }
}

/// Accumulated effect of a sequence of moves:
/// `W[original](g, h) ∝ (sin x)^pref_s (cos x)^pref_c W[current](g + dg, h + dh)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ledger {
    pub dg: i64,
    pub dh: i64,
    pub pref_s: AffineExp,
    pub pref_c: AffineExp,
}

impl Default for Ledger {
    fn default() -> Self {
        Ledger {
            dg: 0,
            dh: 0,
            pref_s: AffineExp::zero(),
            pref_c: AffineExp::zero(),
        }
    }
}

impl Ledger {
    pub fn is_fresh(&self) -> bool {
        *self == Ledger::default()
    }

    /// `g + dg` as an exponent in the original parameters.
    fn current_g(&self) -> AffineExp {
        AffineExp::g().add_constant(&int(self.dg))
    }

    fn current_h(&self) -> AffineExp {
        AffineExp::h().add_constant(&int(self.dh))
    }

    fn record(&mut self, s: AffineExp, c: AffineExp, dg: i64, dh: i64) {
        self.pref_s = &self.pref_s + &s;
        self.pref_c = &self.pref_c + &c;
        self.dg += dg;
        self.dh += dh;
    }
}

impl fmt::Display for Ledger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(g, h) -> (g{:+}, h{:+}), prefactor (sin x)^({}) (cos x)^({})",
            self.dg, self.dh, self.pref_s, self.pref_c
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiagramPair {
    pub first: MayaDiagram,
    pub second: MayaDiagram,
    pub ledger: Ledger,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    First,
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Left,
    Right,
}

impl Which {
    pub const ALL: [Which; 2] = [Which::First, Which::Second];
}

impl Direction {
    pub const ALL: [Direction; 2] = [Direction::Left, Direction::Right];
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Which::First => "first",
            Which::Second => "second",
        })
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Left => "left",
            Direction::Right => "right",
        })
    }
}

pub fn tuple_to_diagrams(t: &StateTuple) -> DiagramPair {
    DiagramPair {
        first: MayaDiagram::from_sets(t.indices(StateType::III), t.indices(StateType::N), 0),
        second: MayaDiagram::from_sets(t.indices(StateType::II), t.indices(StateType::I), 0),
        ledger: Ledger::default(),
    }
}

/// Inverse of [`tuple_to_diagrams`]; the tuple comes out in canonical order.
pub fn diagrams_to_tuple(d: &DiagramPair) -> StateTuple {
    let mut states = Vec::new();
    states.extend(d.second.right_black.iter().map(|&v| State::i(v)));
    states.extend(d.second.left_white.iter().map(|&v| State::ii(v)));
    states.extend(d.first.left_white.iter().map(|&v| State::iii(v)));
    states.extend(d.first.right_black.iter().map(|&v| State::n(v)));
    StateTuple::new(states).expect("diagram bead sets are duplicate-free")
}

/// `1 - e`.
fn flip(e: &AffineExp) -> AffineExp {
    (-e).add_constant(&int(1))
}

/// One division move, updating the ledger.
pub fn move_division(d: &DiagramPair, which: Which, dir: Direction) -> DiagramPair {
    let mut out = d.clone();
    let g = out.ledger.current_g();
    let h = out.ledger.current_h();
    match (which, dir) {
        (Which::Second, Direction::Left) => {
            out.second.step_left();
            out.ledger.record(flip(&g), h, -1, 1);
        }
        (Which::Second, Direction::Right) => {
            out.second.step_right();
            out.ledger.record(g, flip(&h), 1, -1);
        }
        (Which::First, Direction::Left) => {
            out.first.step_left();
            out.ledger.record(flip(&g), flip(&h), -1, -1);
        }
        (Which::First, Direction::Right) => {
            out.first.step_right();
            out.ledger.record(g, h, 1, 1);
        }
    }
    out
}

/// The four two-type normal forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ReductionTarget {
    #[serde(rename = "IN")]
    IAndN,
    #[serde(rename = "I3")]
    IAndIII,
    #[serde(rename = "2N")]
    IIAndN,
    #[serde(rename = "23")]
    IIAndIII,
}

impl ReductionTarget {
    pub const ALL: [ReductionTarget; 4] = [
        ReductionTarget::IAndN,
        ReductionTarget::IAndIII,
        ReductionTarget::IIAndN,
        ReductionTarget::IIAndIII,
    ];

    pub fn code(self) -> &'static str {
        match self {
            ReductionTarget::IAndN => "IN",
            ReductionTarget::IAndIII => "I3",
            ReductionTarget::IIAndN => "2N",
            ReductionTarget::IIAndIII => "23",
        }
    }

    /// Directions of the second and first division moves.
    fn directions(self) -> (Direction, Direction) {
        match self {
            ReductionTarget::IAndN => (Direction::Left, Direction::Left),
            ReductionTarget::IAndIII => (Direction::Left, Direction::Right),
            ReductionTarget::IIAndN => (Direction::Right, Direction::Left),
            ReductionTarget::IIAndIII => (Direction::Right, Direction::Right),
        }
    }
}

impl fmt::Display for ReductionTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for ReductionTarget {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ReductionTarget::ALL
            .into_iter()
            .find(|t| t.code().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown reduction target '{}'", s)))
    }
}

/// Largest index of a family, or -1 when absent.
fn top(t: &StateTuple, kind: StateType) -> i64 {
    t.indices(kind).last().map_or(-1, |&d| d as i64)
}

/// The move sequence for a target: `(which, dir, count)` for each diagram.
pub fn reduction_moves(t: &StateTuple, target: ReductionTarget) -> [(Which, Direction, usize); 2] {
    let (second_dir, first_dir) = target.directions();
    let second_kind = match second_dir {
        Direction::Left => StateType::II,
        Direction::Right => StateType::I,
    };
    let first_kind = match first_dir {
        Direction::Left => StateType::III,
        Direction::Right => StateType::N,
    };
    [
        (Which::Second, second_dir, (top(t, second_kind) + 1) as usize),
        (Which::First, first_dir, (top(t, first_kind) + 1) as usize),
    ]
}

/// Applies moves in the given order.
pub fn apply_moves(d: &DiagramPair, moves: &[(Which, Direction)]) -> DiagramPair {
    moves.iter().fold(d.clone(), |acc, &(w, dir)| move_division(&acc, w, dir))
}

/// Eliminates two of the four families by moving both divisions.
pub fn reduce(t: &StateTuple, target: ReductionTarget) -> (StateTuple, Ledger) {
    let mut d = tuple_to_diagrams(t);
    for (which, dir, count) in reduction_moves(t, target) {
        for _ in 0..count {
            d = move_division(&d, which, dir);
        }
    }
    (diagrams_to_tuple(&d), d.ledger)
}

/// `{0, ..., max} \ {max - d : d in indices}`.
pub fn dbar(indices: &[u32]) -> Vec<u32> {
    let Some(&max) = indices.iter().max() else {
        return Vec::new();
    };
    (0..=max).filter(|k| !indices.contains(&(max - k))).collect()
}

/// `m (x + (m + shift)/2)` with `x = sign * v` for `v` one of `g`, `h`.
fn triangular(m: i64, base: AffineExp, shift: i64) -> AffineExp {
    base.add_constant(&rat(m + shift, 2)).scale(m)
}

/// Closed-form ledger of [`reduce`] in terms of the largest indices.
pub fn reduction_closed_form(t: &StateTuple, target: ReductionTarget) -> Ledger {
    let (d1, d2, d3, dn) = (
        top(t, StateType::I),
        top(t, StateType::II),
        top(t, StateType::III),
        top(t, StateType::N),
    );
    let (g, h) = (AffineExp::g(), AffineExp::h());
    match target {
        ReductionTarget::IAndN => {
            let k = d2 + d3 + 2;
            let m = d2 - d3;
            Ledger {
                dg: -k,
                dh: m,
                pref_s: triangular(k, -&g, 1),
                pref_c: triangular(m, h, -1),
            }
        }
        ReductionTarget::IAndIII => {
            let m = dn - d2;
            let k = d2 + dn + 2;
            Ledger {
                dg: m,
                dh: k,
                pref_s: triangular(m, g, -1),
                pref_c: triangular(k, h, -1),
            }
        }
        ReductionTarget::IIAndN => {
            let m = d1 - d3;
            let k = d1 + d3 + 2;
            Ledger {
                dg: m,
                dh: -k,
                pref_s: triangular(m, g, -1),
                pref_c: triangular(k, -&h, 1),
            }
        }
        ReductionTarget::IIAndIII => {
            let k = d1 + dn + 2;
            let m = dn - d1;
            Ledger {
                dg: k,
                dh: m,
                pref_s: triangular(k, g, -1),
                pref_c: triangular(m, h, -1),
            }
        }
    }
}

/// The `(I, N)` reduction, used as a canonical representative.
pub fn canonical_form(t: &StateTuple) -> (StateTuple, Ledger) {
    reduce(t, ReductionTarget::IAndN)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyMode {
    Symbolic,
    Instantiated,
}

/// Outcome of checking `W[before](g, h) ∝ prefactor W[after](g + dg, h + dh)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProportionalityReport {
    pub before: StateTuple,
    pub after: StateTuple,
    pub ledger: Ledger,
    pub mode: VerifyMode,
    pub proportional: bool,
    /// `c` with `W[before] = c * prefactor * W[after]`, rendered.
    pub constant: Option<String>,
}

/// Checks a ledger identity in an arbitrary domain, returning the constant.
pub fn check_ledger<D: Domain>(
    domain: &D,
    before: &StateTuple,
    after: &StateTuple,
    ledger: &Ledger,
) -> Result<Option<<D::C as Ring>::Frac>> {
    let lhs = wronskian_in(domain, before)?;
    let rhs = wronskian_in(&domain.shifted(ledger.dg, ledger.dh), after)?
        .with_prefactor(&ledger.pref_s, &ledger.pref_c);
    Ok(compare_quasi(&lhs, &rhs))
}

/// Verifies a ledger identity symbolically when both tuples have at most
/// five states, otherwise at `point`.
pub fn verify_ledger(
    before: &StateTuple,
    after: &StateTuple,
    ledger: &Ledger,
    point: Option<&Point>,
) -> Result<ProportionalityReport> {
    let symbolic = before.len() <= 5 && after.len() <= 5;
    let (mode, constant) = if symbolic {
        let c = check_ledger(&Symbolic::<ParamPoly>::new(), before, after, ledger)?;
        (VerifyMode::Symbolic, c.map(|c| c.to_string()))
    } else {
        let default = Point::default_generic();
        let p = point.unwrap_or(&default);
        let c = check_ledger(p, before, after, ledger)?;
        (VerifyMode::Instantiated, c.map(|c| crate::algebra::rational_to_string(&c)))
    };
    Ok(ProportionalityReport {
        before: before.clone(),
        after: after.clone(),
        ledger: ledger.clone(),
        mode,
        proportional: constant.is_some(),
        constant,
    })
}

/// Applies one move to `t` and checks the resulting Wronskian identity.
/// Instantiations are validated for genericity.
pub fn verify_move_identity(
    t: &StateTuple,
    which: Which,
    dir: Direction,
    instantiate: Option<(crate::algebra::Rational, crate::algebra::Rational)>,
) -> Result<ProportionalityReport> {
    let point = instantiate.map(|(g, h)| Point::new(g, h)).transpose()?;
    let moved = move_division(&tuple_to_diagrams(t), which, dir);
    let after = diagrams_to_tuple(&moved);
    verify_ledger(t, &after, &moved.ledger, point.as_ref())
}

/// Relation between two tuples with the same canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equivalence {
    pub canonical_first: StateTuple,
    pub canonical_second: StateTuple,
    pub equivalent: bool,
    /// `W[t1](g, h) ∝ (sin x)^pref_s (cos x)^pref_c W[t2](g + dg, h + dh)`.
    pub relation: Option<Ledger>,
}

pub fn equivalence(t1: &StateTuple, t2: &StateTuple) -> Equivalence {
    let (c1, l1) = canonical_form(t1);
    let (c2, l2) = canonical_form(t2);
    let equivalent = c1 == c2;
    let relation = equivalent.then(|| {
        let (dg, dh) = (l1.dg - l2.dg, l1.dh - l2.dh);
        Ledger {
            dg,
            dh,
            pref_s: &l1.pref_s - &l2.pref_s.shift(dg, dh),
            pref_c: &l1.pref_c - &l2.pref_c.shift(dg, dh),
        }
    });
    Equivalence {
        canonical_first: c1,
        canonical_second: c2,
        equivalent,
        relation,
    }
}
