//! Exact symbolic engine for higher-rank Askey-Wilson generators in
//! `U_q(sl2)^{⊗n}` and q-Bannai-Ito generators in `osp_q(1|2)^{⊗n}`.

pub mod axioms;
pub mod backend;
pub mod coideal;
pub mod elem;
pub mod error;
pub mod extension;
pub mod numoracle;
pub mod osp;
pub mod qcoeff;
pub mod relations;
pub mod uq;

pub use backend::{Aw, Backend, BackendKind, Bi};
pub use coideal::{EdgeElem, Step};
pub use elem::{AlgElem, Monomial};
pub use error::{Error, Result};
pub use extension::{GeneratorCache, IndexSet, Process};
pub use osp::{OspElem, OspMono};
pub use qcoeff::{Int, LaurentPoly, QError, RatQ, Scalar};
pub use relations::{RelationKind, RelationReport, ReportLine};
pub use uq::{UqElem, UqMono};
