//! Box decomposition and staircase-path machinery.

pub mod boundary;
pub mod cost;
pub mod grid;
pub mod path;
pub mod sign;

pub use boundary::{
    boundary_len, connectable, l_index, l_position, r_index, r_position, BoundaryIndex, Pos, Side,
};
pub use cost::{path_cost, shortest_paths_direct, BoxCosts, BoxSignature};
pub use grid::{decompose, BoxGrid, Slot};
pub use path::{
    admissible_pairs, check_g, enumerate_paths, for_each_path, pair_of, paths_between,
    AdmissiblePair, Move, PackedPath, PairCatalog, StaircasePath, MAX_G, MIN_G,
};
pub use sign::{sign_assignment, SignAssignment};
