//! Number triangles and polynomial families computed from their recurrences,
//! independently of the grammar engine and the enumerator.

mod derangement;
mod families;
mod triangle;

pub use derangement::{d_nij_table, d_xy_polynomial, DerangementTable};
pub use families::{family_polynomial, rising_factorial, FamilyName, Tables};
pub use triangle::{triangle, Triangle, TriangleName};
