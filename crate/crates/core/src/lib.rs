//! Exact construction and verification of plane colorings without
//! monochromatic right triangles, emulated over finitely many levels.

pub mod algebra;
pub mod closure;
pub mod coloring;
pub mod corpus;
pub mod geometry;
pub mod io;
pub mod pipeline;
pub mod svg;
pub mod verify;
