//! Small numerical kernels shared by the geometry modules.

pub mod fd;
pub mod interp;
pub mod quad;
pub mod tridiag;
