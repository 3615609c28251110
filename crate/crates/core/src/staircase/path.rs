//! Staircase paths and their one-word encoding.
//!
//! Word layout (independent of `g`):
//!
//! ```text
//! bits 63..59  start index in L (1..=25)
//! bits 58..57  move 0
//! bits 56..55  move 1
//! ...          (2 bits per move, MSB first, 0 terminates)
//! ```
//!
//! Move codes are `Up = 1`, `Right = 2`, `UpRight = 3`, so comparing words as
//! integers orders paths by start index, then lexicographically by moves with
//! a proper prefix ordering first. This is the enumeration order and the
//! tie-breaking order used everywhere.

use std::fmt;

use crate::error::{Error, Result};

use super::boundary::{boundary_len, connectable, l_index, l_position, on_r, r_index, Pos};

pub const MIN_G: usize = 2;
pub const MAX_G: usize = 13;

const START_SHIFT: u32 = 59;
const FIRST_MOVE_SHIFT: u32 = 57;
/// Longest move sequence the layout can hold.
pub const MAX_MOVES: usize = 29;

pub fn check_g(g: usize) -> Result<()> {
    if !(MIN_G..=MAX_G).contains(&g) {
        return Err(Error::Config(format!(
            "box size g must be in [{MIN_G}, {MAX_G}], got {g}"
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    Up,
    Right,
    UpRight,
}

impl Move {
    pub const ALL: [Move; 3] = [Move::Up, Move::Right, Move::UpRight];

    fn code(self) -> u64 {
        match self {
            Move::Up => 1,
            Move::Right => 2,
            Move::UpRight => 3,
        }
    }

    fn from_code(code: u64) -> Option<Move> {
        match code {
            1 => Some(Move::Up),
            2 => Some(Move::Right),
            3 => Some(Move::UpRight),
            _ => None,
        }
    }

    pub fn apply(self, (l, m): Pos) -> Pos {
        match self {
            Move::Up => (l + 1, m),
            Move::Right => (l, m + 1),
            Move::UpRight => (l + 1, m + 1),
        }
    }

    pub fn is_diagonal(self) -> bool {
        self == Move::UpRight
    }
}

/// Decoded staircase path: a start index in `L` and its moves.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StaircasePath {
    pub start: usize,
    pub moves: Vec<Move>,
}

impl StaircasePath {
    pub fn new(start: usize, moves: Vec<Move>) -> Self {
        StaircasePath { start, moves }
    }

    pub fn encode(&self) -> PackedPath {
        assert!(
            (1..32).contains(&self.start) && self.moves.len() <= MAX_MOVES,
            "path does not fit the packed layout"
        );
        let mut word = (self.start as u64) << START_SHIFT;
        for (t, mv) in self.moves.iter().enumerate() {
            word |= mv.code() << (FIRST_MOVE_SHIFT - 2 * t as u32);
        }
        PackedPath(word)
    }

    /// All positions `P(0), ..., P(t*)`.
    pub fn positions(&self, g: usize) -> Vec<Pos> {
        let mut pos = l_position(g, self.start);
        let mut out = Vec::with_capacity(self.moves.len() + 1);
        out.push(pos);
        for mv in &self.moves {
            pos = mv.apply(pos);
            out.push(pos);
        }
        out
    }

    /// Checks the path stays in the box, starts on `L` and ends on `R`.
    pub fn validate(&self, g: usize) -> Result<()> {
        if !(1..=boundary_len(g)).contains(&self.start) {
            return Err(Error::Input(format!(
                "start index {} outside L for g={g}",
                self.start
            )));
        }
        if self.moves.is_empty() {
            return Err(Error::Input("staircase path has no moves".into()));
        }
        let positions = self.positions(g);
        if positions.iter().any(|&(l, m)| l > g || m > g) {
            return Err(Error::Input(format!("path leaves the {g}x{g} box")));
        }
        let end = *positions.last().expect("nonempty");
        if !on_r(g, end) {
            return Err(Error::Input(format!("path ends at {end:?}, not on R")));
        }
        Ok(())
    }
}

/// A staircase path packed into one 64-bit word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PackedPath(pub u64);

impl PackedPath {
    pub fn word(self) -> u64 {
        self.0
    }

    pub fn start(self) -> usize {
        (self.0 >> START_SHIFT) as usize
    }

    pub fn moves(self) -> impl Iterator<Item = Move> {
        (0..MAX_MOVES)
            .map(move |t| (self.0 >> (FIRST_MOVE_SHIFT - 2 * t as u32)) & 0b11)
            .map_while(Move::from_code)
    }

    pub fn len(self) -> usize {
        self.moves().count()
    }

    pub fn is_empty(self) -> bool {
        self.len() == 0
    }

    /// Appends one move to a path currently holding `len` moves.
    pub fn push(self, len: usize, mv: Move) -> PackedPath {
        PackedPath(self.0 | mv.code() << (FIRST_MOVE_SHIFT - 2 * len as u32))
    }

    pub fn from_start(start: usize) -> PackedPath {
        PackedPath((start as u64) << START_SHIFT)
    }

    pub fn decode(self) -> StaircasePath {
        StaircasePath {
            start: self.start(),
            moves: self.moves().collect(),
        }
    }

    /// `(move, position entered)` for every step after the start.
    pub fn steps(self, g: usize) -> impl Iterator<Item = (Move, Pos)> {
        let mut pos = l_position(g, self.start());
        self.moves().map(move |mv| {
            pos = mv.apply(pos);
            (mv, pos)
        })
    }

    pub fn end(self, g: usize) -> Pos {
        self.steps(g)
            .last()
            .map(|(_, p)| p)
            .unwrap_or_else(|| l_position(g, self.start()))
    }

    pub fn end_index(self, g: usize) -> Option<usize> {
        r_index(g, self.end(g))
    }
}

impl fmt::Debug for PackedPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PackedPath(L{}:", self.start())?;
        for mv in self.moves() {
            f.write_str(match mv {
                Move::Up => "U",
                Move::Right => "R",
                Move::UpRight => "D",
            })?;
        }
        f.write_str(")")
    }
}

/// Visits every staircase path of a `g x g` box in enumeration order without
/// materializing the list. The callback receives the start index, the move
/// stack and the packed word.
pub fn for_each_path(g: usize, mut visit: impl FnMut(usize, &[Move], PackedPath)) -> Result<()> {
    check_g(g)?;
    let mut stack = Vec::with_capacity(2 * g);
    for start in 1..=boundary_len(g) {
        let pos = l_position(g, start);
        dfs(
            g,
            start,
            pos,
            PackedPath::from_start(start),
            &mut stack,
            &mut visit,
        );
    }
    Ok(())
}

fn dfs(
    g: usize,
    start: usize,
    pos: Pos,
    word: PackedPath,
    stack: &mut Vec<Move>,
    visit: &mut impl FnMut(usize, &[Move], PackedPath),
) {
    if !stack.is_empty() && on_r(g, pos) {
        visit(start, stack, word);
    }
    for mv in Move::ALL {
        let next = mv.apply(pos);
        if next.0 > g || next.1 > g {
            continue;
        }
        stack.push(mv);
        dfs(g, start, next, word.push(stack.len() - 1, mv), stack, visit);
        stack.pop();
    }
}

/// All staircase paths of a `g x g` box in enumeration order.
///
/// The count grows roughly like `5.6^g`; use [`for_each_path`] past `g = 9`.
pub fn enumerate_paths(g: usize) -> Result<Vec<PackedPath>> {
    let mut out = Vec::new();
    for_each_path(g, |_, _, word| out.push(word))?;
    Ok(out)
}

/// Every path in `S(v, w)`, in enumeration order.
pub fn paths_between(g: usize, v: usize, w: usize) -> Vec<PackedPath> {
    fn go(pos: Pos, target: Pos, len: usize, word: PackedPath, out: &mut Vec<PackedPath>) {
        if len > 0 && pos == target {
            out.push(word);
            return;
        }
        for mv in Move::ALL {
            let next = mv.apply(pos);
            if next.0 > target.0 || next.1 > target.1 {
                continue;
            }
            go(next, target, len + 1, word.push(len, mv), out);
        }
    }
    let mut out = Vec::new();
    if connectable(g, v, w) {
        let target = super::boundary::r_position(g, w);
        go(
            l_position(g, v),
            target,
            0,
            PackedPath::from_start(v),
            &mut out,
        );
    }
    out
}

/// An admissible `(L(v), R(w))` pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissiblePair {
    pub v: usize,
    pub w: usize,
}

/// Admissible pairs for box size `g`, ordered by `(v, w)`.
pub fn admissible_pairs(g: usize) -> Result<Vec<AdmissiblePair>> {
    check_g(g)?;
    let len = boundary_len(g);
    Ok((1..=len)
        .flat_map(|v| (1..=len).map(move |w| AdmissiblePair { v, w }))
        .filter(|p| connectable(g, p.v, p.w))
        .collect())
}

/// Admissible pairs with an `O(1)` index lookup.
#[derive(Clone, Debug)]
pub struct PairCatalog {
    g: usize,
    pairs: Vec<AdmissiblePair>,
    index: Vec<Option<u16>>,
}

impl PairCatalog {
    pub fn new(g: usize) -> Result<Self> {
        let pairs = admissible_pairs(g)?;
        let len = boundary_len(g);
        let mut index = vec![None; (len + 1) * (len + 1)];
        for (k, p) in pairs.iter().enumerate() {
            index[p.v * (len + 1) + p.w] = Some(k as u16);
        }
        Ok(PairCatalog { g, pairs, index })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn pairs(&self) -> &[AdmissiblePair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn index_of(&self, v: usize, w: usize) -> Option<usize> {
        let len = boundary_len(self.g);
        if v == 0 || w == 0 || v > len || w > len {
            return None;
        }
        self.index[v * (len + 1) + w].map(usize::from)
    }
}

/// The pair `(v, w)` joined by a packed path, if it is a staircase path.
pub fn pair_of(g: usize, path: PackedPath) -> Option<AdmissiblePair> {
    let v = path.start();
    let w = path.end_index(g)?;
    l_index(g, l_position(g, v))?;
    Some(AdmissiblePair { v, w })
}
