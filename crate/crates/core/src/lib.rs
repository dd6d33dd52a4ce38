//! Isomorphism of augmentations of link-graded semi-free dgas over GF(2^m).
//!
//! Two augmentations of a Chekanov–Eliashberg style dga are isomorphic in the
//! positive augmentation category exactly when a *dilated augmentation
//! homotopy* relates them: a tuple of per-component units `d_i` together with
//! a degree 1 map `K` satisfying the twisted Leibniz rule
//! `K(xy) = K(x) e2(y) + e1(x) K(y)` and, for every degree 0 chord `x` from
//! component `c` to component `r`,
//! `d_c e1(x) + d_r e2(x) = K(dx)` (characteristic 2).
//!
//! The crate is organised bottom-up:
//!
//! * [`gfield`]: GF(2^m) arithmetic.
//! * [`dga`]: the graded algebra, its text format, Leibniz expansion.
//! * [`augment`]: augmentations, their enumeration and text format.
//! * [`homotopy`]: the homotopy checker, the existence solver, dilations.
//! * [`homcx`]: the degree 0/1 slice of `Hom(e1, e2)` and bilinearized
//!   cohomology.
//! * [`classify`]: partition of all augmentations into isomorphism classes.
//!
//! Data-parallel loops go through [`par`], which uses rayon when the
//! `parallel` feature is enabled (the default) and plain iterators otherwise.

pub mod augment;
pub mod classify;
pub mod dga;
pub mod error;
pub mod gfield;
pub mod homcx;
pub mod homotopy;
pub mod linalg;
pub mod par;

pub use augment::Augmentation;
pub use classify::{classify, ClassifyOptions, IsoClassification};
pub use dga::{Dga, GenId, GenKind, Generator, Poly, Word};
pub use error::{AugError, ClassifyError, DgaError, FieldError, HomError, HomotopyError};
pub use gfield::{Elem, Field};
pub use homcx::{Hom0Element, Hom1Coeffs, HomSlice};
pub use homotopy::{DilatedHomotopy, DilationTuple, SearchMode};
