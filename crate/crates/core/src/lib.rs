//! Exact two-terminal reliability of binary-state networks.
//!
//! A network is an undirected graph whose arcs work independently with known
//! probabilities. Its reliability is the probability that the working arcs
//! connect node 1 (the source) to node `n` (the sink).
//!
//! The crate enumerates arc states as binary vectors ordered like binary
//! numbers and avoids most of the `2^m` vectors:
//!
//! * [`labeling`] decides which arc sits at each coordinate, putting small
//!   source-sink cuts first.
//! * [`bounds`] finds the first connected and the last disconnected vector
//!   and sums the probability of everything before and after them in closed
//!   form.
//! * [`state::prefix_status`] settles whole blocks of vectors from a short
//!   prefix.
//! * [`engine::bounded_bat`] puts these together; the other solvers in
//!   [`engine`] enumerate everything and serve as references.
//!
//! ```
//! use relbat::{bounded_bat, fixtures, Labeling, Mode};
//!
//! let net = fixtures::bridge();
//! let lab = Labeling::min_cut(&net);
//! let report = bounded_bat(&net, &lab, Mode::DisconnectedSum);
//! assert!((report.reliability - 0.9078784).abs() < 1e-12);
//! ```

pub mod bounds;
pub mod cut;
pub mod directed;
pub mod engine;
pub mod fixtures;
pub mod generate;
pub mod graph;
pub mod labeling;
pub mod probability;
pub mod state;

pub use bounds::{
    find_first_connected, find_last_disconnected, prob_skipped_after, prob_skipped_before,
};
pub use directed::{directed_expansion, DirectedNetwork};
pub use engine::{
    bounded_bat, brute_force_reliability, classic_bat_directed, classic_bat_undirected,
    EngineError, Method, Mode, ResolvedPrefix, SolveReport, DEFAULT_CAP,
};
pub use generate::{gen_random_network, GenError};
pub use graph::{ArcSubset, Network, NetworkError};
pub use labeling::{Labeling, LabelingError};
pub use probability::{prefix_prob, vector_prob};
pub use state::{bat_successor, prefix_status, Prefix, PrefixStatus, StateVector};

// The guide's snippets run as doc-tests of this crate.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/model.md")]
    mod model {}
    #[doc = include_str!("../../../book/src/labeling.md")]
    mod labeling {}
    #[doc = include_str!("../../../book/src/probability.md")]
    mod probability {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/bounded.md")]
    mod bounded {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
