pub mod algebroid;
pub mod alt;
pub mod cartan;
pub mod error;
pub mod fixtures;
pub mod imforms;
pub mod linalg;
pub mod linforms;
pub mod multivec;
pub mod par;
pub mod random;
pub mod report;
pub mod symkernel;
pub mod weil;

pub use error::{Error, Result};
pub use report::{CheckReport, Tag, Violation};
pub use symkernel::{parse_poly, q, Chart, Coordinate, Polynomial, Rational, Role};
