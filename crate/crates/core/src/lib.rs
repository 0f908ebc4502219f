//! Exact computations with representations of finite acyclic quivers and
//! the symbolic injective resolutions of path algebras over a base ring.

pub mod error;
pub mod exactla;
pub mod par;
pub mod quiver;
pub mod rep;
pub mod symres;
pub mod tensorbox;

pub use error::{Error, ErrorKind, Result};
pub use exactla::{Field, Matrix, Scalar};
pub use quiver::{ArrowChoice, Path, Quiver, Relation};
pub use rep::{RepMorphism, Representation};
pub use symres::{ExtNat, FormalInjective, RingProfile, Tri};
