//! Lexicographic Gröbner bases of the vanishing ideal of a finite set of
//! points, built straight from the points.
//!
//! The point set is decomposed level by level into blocks indexed by
//! exponent vectors ([`decomp`]). Each block yields one basis polynomial by
//! iterated Lagrange interpolation ([`interp`]), and the polynomials of all
//! levels form a minimal lex basis ([`gblex`]). Buchberger–Möller and
//! Buchberger's algorithm ([`oracle`]) serve as independent references;
//! [`analysis`] covers specialization and triangular decomposition.
//!
//! ```
//! use lexpoint::{groebner_basis, reduce_basis, PointSet, Rationals, Field};
//!
//! let k = Rationals;
//! let v = PointSet::new(2, vec![
//!     vec![k.from_i64(0), k.from_i64(0)],
//!     vec![k.from_i64(0), k.from_i64(1)],
//!     vec![k.from_i64(1), k.from_i64(0)],
//! ]).unwrap();
//! let gb = reduce_basis(&k, &groebner_basis(&k, &v).unwrap()).unwrap();
//! let text: Vec<String> = gb.polys.iter().map(|p| p.render(&k)).collect();
//! assert_eq!(text, ["x1^2 - x1", "x1*x2", "x2^2 - x2"]);
//! ```

pub mod analysis;
pub mod decomp;
pub mod error;
pub mod field;
pub mod gblex;
pub mod interp;
pub mod oracle;
pub mod output;
pub mod points;
pub mod poly;
pub mod report;
pub mod sample;

pub use analysis::{
    check_cells, check_splitting, specialize, triangular_decompose, SpecializationReport,
    TriangularCell,
};
pub use decomp::{
    check_basic_properties, check_deletion_invariants, enumerate_indices, Decomposition,
    IndexRecord,
};
pub use error::{Error, Result};
pub use field::{Field, FieldSpec, FieldVisitor, PrimeField, Rationals};
pub use gblex::{
    groebner_basis, groebner_basis_par, groebner_tower, reduce_basis, standard_monomials, Flavor,
    GroebnerBasis,
};
pub use interp::{
    build_generator, build_generator_expanded, check_factorization, structure_certificate,
};
pub use oracle::{buchberger, buchberger_moller, is_groebner_basis};
pub use points::{load_point_set, PointSet, PointSetDocument};
pub use poly::{Monomial, Polynomial};
pub use report::{Check, CheckReport};

pub type QPolynomial = Polynomial<num_rational::BigRational>;
pub type FpPolynomial = Polynomial<u64>;
pub type QPointSet = PointSet<num_rational::BigRational>;
pub type FpPointSet = PointSet<u64>;
pub type QGroebnerBasis = GroebnerBasis<num_rational::BigRational>;
pub type FpGroebnerBasis = GroebnerBasis<u64>;
