//! Rooted-digraph connectivity certificates: local connectivity and
//! maximum disjoint path systems with Erdős–Menger separations, the
//! bubble calculus, vertex-flames, and the certified construction of
//! large spanning flames — together with brute-force oracles that
//! certify every flow-based shortcut on small instances.

pub mod bubble;
pub mod bundle;
pub mod digraph;
pub mod error;
pub mod flame;
pub mod format;
mod flow;
pub mod generate;
pub mod menger;
pub mod oracle;
pub mod paths;

pub use bubble::{Bubble, BubbleOutcome, LargenessReport, MaxBubble};
pub use digraph::{Edge, RootedDigraph, SplitDigraph, Vertex, VertexSet};
pub use error::{Error, Result};
pub use flame::{FlameReport, LargeFlameOutput, PrefixReport};
pub use menger::{AugmentOutcome, CoveringOutcome};
pub use paths::{MengerCertificate, Path, PathSystem, Separation, SystemKind};
