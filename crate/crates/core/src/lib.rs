pub mod linalg;
pub mod algebra;
pub mod io;
pub mod proj;
pub mod rep;
pub mod silt;
pub mod explore;
pub mod delta;
pub mod fan;
