//! Exact intersection theory for stable log quadric surfaces.
//!
//! `slq` follows a one-parameter degeneration of trigonal curves, seen as
//! triple covers of P¹ × P¹. It drives the pair `(X, (2/3 + ε)D)` to its
//! stable limit with exact rational arithmetic. The crate has six layers:
//!
//! - **lattice core** ([`rat`], [`linalg`], [`singularity`], [`lattice`]):
//!   exact fractions, Hirzebruch–Jung chains and cyclic quotient
//!   singularities, curve configurations with hidden (contracted) curves,
//!   and log pairs glued along double curves.
//! - **birational operations** ([`birational`]): weighted blow-ups,
//!   blow-downs, chain contractions, and a replayable [`TransformLog`].
//! - **flip engine** ([`mod@flip`]): Type I and Type II flips, topples, and their
//!   staged (`A_n` total space) variants.
//! - **cover kit** ([`cover`], [`toric`]): cubic-form discriminants, local
//!   branch models with log canonical thresholds, Hassett stability and slc
//!   checks, and toric polytopes of the stable components.
//! - **stabilizer** ([`cases`], [`stabilizer`]): the input cases, the
//!   stabilization procedure, the table of stable surfaces, and the boundary
//!   strata with their test-curve matrix.
//! - **cli / io** ([`io`], [`dot`], [`cli`], [`verify`]): the TOML pair
//!   document format, Graphviz export, the `slq` command line, and the
//!   built-in verification suite.
//!
//! ```
//! use slq::{input_pair, type1_flip, FlipInput, HyperellipticSub, InputCase, Rat};
//!
//! let pair = input_pair(&InputCase::HyperellipticTail(HyperellipticSub::Unramified)).unwrap();
//! let (flipped, _log) = type1_flip(&FlipInput::type1(pair, "sigma").with_c("H").at_p(&["F"])).unwrap();
//! let x = flipped.component("X").unwrap();
//! assert_eq!(x.self_int("sigma_E2").unwrap(), Rat::new(-4, 9));
//! ```

pub mod birational;
pub mod cases;
pub mod cli;
pub mod cover;
pub mod dot;
pub mod error;
pub mod flip;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod rat;
pub mod singularity;
pub mod stabilizer;
pub mod toric;
pub mod verify;

pub use birational::{blow_down, blow_up, BlowupRequest, TransformLog};
pub use cases::{input_pair, F3F1Directrices, HyperellipticSub, InputCase};
pub use cover::{classify_cover, slc_check, CoverDescriptor};
pub use dot::export_dot;
pub use error::{Error, Result};
pub use flip::{flip, topple, type1_flip, type1_staged, type2_accordion, type2_flip, FlipInput, FlipKind};
pub use io::{parse_pair, render_pair};
pub use lattice::{CurveConfig, DivisorClass, LogPair};
pub use rat::{EpsLinear, Rat};
pub use singularity::{hj_chain_to_singularity, QuotientSingularity};
pub use stabilizer::{regenerate_table, stabilize, StablePairRecord};
