pub mod binaryforms;
pub mod builtins;
pub mod charcalc;
pub mod error;
pub mod exactlin;
pub mod gram;
pub mod incidence;
pub mod laws;
pub mod obstruction;
pub mod presentations;
pub mod sample;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{Field, Fp, Rat, Ring, Trunc};
pub use laws::{EndW, Law, LawBasis, RatLaw, Symmetry};
pub use presentations::{OperadType, QdualMode, QuadraticPresentation};

pub type RatVec = exactlin::SparseVec<Rat>;
pub type RatMatrix = exactlin::SparseMatrix<Rat>;
pub type RatSubspace = exactlin::Subspace<Rat>;
pub type RatQuotient = exactlin::QuotientSpace<Rat>;
