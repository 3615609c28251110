//! Boundary positions of a `g x g` box.
//!
//! Positions are `(l, m)` with `1 <= l, m <= g`; `l` indexes the row (the
//! `A` side, growing upwards) and `m` the column (the `B` side, growing to
//! the right).
//!
//! `L` (left and bottom boundary) is numbered clockwise from the bottom-right
//! corner `(1, g)` to the top-left corner `(g, 1)`; `R` (right and top
//! boundary) counterclockwise between the same two corners. Indices are
//! 1-based, `1..=2g-1`.

pub type Pos = (usize, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    L,
    R,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryIndex {
    pub side: Side,
    pub k: usize,
}

impl BoundaryIndex {
    pub fn position(&self, g: usize) -> Pos {
        match self.side {
            Side::L => l_position(g, self.k),
            Side::R => r_position(g, self.k),
        }
    }
}

pub fn boundary_len(g: usize) -> usize {
    2 * g - 1
}

pub fn l_position(g: usize, k: usize) -> Pos {
    debug_assert!((1..=2 * g - 1).contains(&k));
    if k <= g {
        (1, g - k + 1)
    } else {
        (k - g + 1, 1)
    }
}

pub fn r_position(g: usize, k: usize) -> Pos {
    debug_assert!((1..=2 * g - 1).contains(&k));
    if k <= g {
        (k, g)
    } else {
        (g, 2 * g - k)
    }
}

/// `L` index of a position on the left or bottom boundary.
pub fn l_index(g: usize, pos: Pos) -> Option<usize> {
    match pos {
        (1, m) if (1..=g).contains(&m) => Some(g - m + 1),
        (l, 1) if (1..=g).contains(&l) => Some(l + g - 1),
        _ => None,
    }
}

/// `R` index of a position on the right or top boundary.
pub fn r_index(g: usize, pos: Pos) -> Option<usize> {
    match pos {
        (l, m) if m == g && (1..=g).contains(&l) => Some(l),
        (l, m) if l == g && (1..=g).contains(&m) => Some(2 * g - m),
        _ => None,
    }
}

pub fn on_r(g: usize, pos: Pos) -> bool {
    pos.0 == g || pos.1 == g
}

/// True when some staircase path with at least one move joins `L(v)` to `R(w)`.
pub fn connectable(g: usize, v: usize, w: usize) -> bool {
    let (a, b) = (l_position(g, v), r_position(g, w));
    a.0 <= b.0 && a.1 <= b.1 && a != b
}
