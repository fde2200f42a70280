//! Generalized multicategories over cartesian monads on finite sets.

pub mod algebras;
pub mod cli;
pub mod element;
pub mod error;
pub mod finset;
pub mod free;
pub mod monads;
pub mod multicat;
pub mod report;
pub mod search;
pub mod spans;
pub mod transport;

pub use element::Element;
pub use error::{Error, Result};
pub use finset::{FiniteMap, FiniteSet};
pub use monads::{Monad, MonadPlugin};
pub use report::{CheckReport, Witness};
pub use multicat::{check_map, terminal_multicat, Multicategory, MulticategoryMap};
pub use spans::{compose_spans, identity_span, SpanTwoCell, TSpan};
