//! Integral laminations: normal-form curves, shear coordinates, the
//! elementary-laminate dictionary and Dehn twists.

mod dehn;
mod driver;
mod elementary;
mod laminate;
mod shear;
mod word;

pub use dehn::{dehn_twist, intersection_count, twist_orbit, twist_stabilization, Corridor, Stabilization};
pub use driver::{allcase_driver, ClosedPart, DriverReport, DriverStep};
pub use elementary::{classify, decompose, elementary, elementary_inverse, merge, split_exceptional, Classified, Decomposition};
pub use laminate::{End, Laminate};
pub use shear::{raw_counts, shear, shear_ideal, shear_ideal_with, shear_sum, sum_shear, CHECK_WRAPS, WRAPS};
pub use word::{boundary, closed_word, load_laminate, open_word, spiral, EndSpec, Kind, LaminateFile};
