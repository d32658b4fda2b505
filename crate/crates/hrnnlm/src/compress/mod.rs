//! Space-compressed Heaviside encodings of unweighted deterministic FSAs:
//! two-hot (square-root) and four-hot (fourth-root) state codes, the binary
//! matrix decomposition machinery behind them, and the layered threshold
//! networks that execute the compiled transition function.

mod binmat;
mod codes;
mod detect;
mod dewdney;
mod indyk;
mod net;

pub use binmat::{
    ceil_fourth_root, ceil_sqrt, classify_line, line_cover, max_transversal, nondecreasing_cover,
    random_matrix, BinMatrix, LineKind,
};
pub use codes::{parent_matrix, FourHotCode, StateCode, TwoHotCode};
pub use detect::{detect_line, detect_nondecreasing, northwestern_neuron, LineDetector, Neuron};
pub use dewdney::build_dewdney;
pub use indyk::{build_indyk, build_indyk_with_perm, DEFAULT_MAX_TRIES};
pub use net::{simulate_net, NetCode, SizeReport, Sublayer, ThresholdNet};
