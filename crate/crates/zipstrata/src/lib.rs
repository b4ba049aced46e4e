pub mod error;
pub mod glnzip;
pub mod hasse;
pub mod linalg;
pub mod rootdata;
pub mod scalar;
pub mod strata;
pub mod weyl;
pub mod zipdatum;

pub use error::{Error, Result};
pub use rootdata::{CharacterLattice, RootId, RootSystem, SimpleSet};
pub use weyl::{Weyl, WeylElement};
pub use zipdatum::{make_zip_datum, ZipDatum, ZipDatumDoc};

pub type Rational = num_rational::BigRational;
pub type F2 = scalar::Gf<2, 1>;
pub type F3 = scalar::Gf<3, 1>;
pub type F4 = scalar::Gf<2, 2>;
pub type F5 = scalar::Gf<5, 1>;
pub type F7 = scalar::Gf<7, 1>;
pub type F8 = scalar::Gf<2, 3>;
pub type F9 = scalar::Gf<3, 2>;
pub use glnzip::F65521;
