//! Point-module moduli of monomial algebras attached to subshifts.
//!
//! A monomial algebra is a free algebra modulo finitely many words, or the
//! algebra whose non-zero monomials are the factors of an infinite word. This
//! crate computes, with exact arithmetic, the combinatorial data that
//! describes its truncated point-module schemes: trees over the algebra,
//! maximal subset sequences (irreducible components), their counts and
//! generating functions, prolongable radicals, Hilbert series and
//! permutation isomorphisms.
//!
//! ```
//! use pointspace::algebra::Presentation;
//! use pointspace::moduli::{count_components, Variant};
//! use pointspace::MonomialAlgebra;
//!
//! let p = Presentation::parse(&["x", "y"], &["xy"]).unwrap();
//! let a = MonomialAlgebra::from(p);
//! let c = count_components(&a, 5, Variant::Point, &Default::default()).unwrap();
//! assert_eq!(c.count, 6);
//! ```

pub mod algebra;
pub mod cli;
pub mod error;
pub mod genfun;
pub mod io;
pub mod moduli;
pub mod morphisms;
pub mod poly;
pub mod radical;
pub mod words;

pub use algebra::{MonomialAlgebra, Presentation};
pub use error::{Error, Result};
pub use poly::{IntPoly, RationalGF};
pub use words::{Alphabet, FactorSet, Letter, LetterSet, Side, Word, WordGenerator};

use serde::{Deserialize, Serialize};

/// Whether a result is proven from complete data or read off finite samples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Exactness {
    Exact,
    Heuristic,
}

impl Exactness {
    /// Heuristic if either side is.
    pub fn and(self, other: Exactness) -> Exactness {
        self.max(other)
    }

    pub fn is_exact(self) -> bool {
        self == Exactness::Exact
    }
}

impl std::fmt::Display for Exactness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Exactness::Exact => "exact",
            Exactness::Heuristic => "heuristic",
        })
    }
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/words.md")]
    mod words {}
    #[doc = include_str!("../../../book/src/algebras.md")]
    mod algebras {}
    #[doc = include_str!("../../../book/src/components.md")]
    mod components {}
    #[doc = include_str!("../../../book/src/generating-functions.md")]
    mod generating_functions {}
    #[doc = include_str!("../../../book/src/radical.md")]
    mod radical {}
    #[doc = include_str!("../../../book/src/morphisms.md")]
    mod morphisms {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
