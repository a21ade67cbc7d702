pub mod proj;
pub mod resolve;
pub mod zeros;

pub use proj::{is_ordinary, linear_change, multiplicity, standard_quadratic, ProjPoint, ProjPoly};
pub use resolve::{
    centered_quadratic, excellent_position_check, find_singular_points, resolve, s_estimate,
    ResolutionTrace, SingularPoint, SingularReport,
};
pub use zeros::common_points;
