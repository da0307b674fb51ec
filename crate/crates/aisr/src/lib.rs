//! File formats, the claim registry and the command-line front end for
//! `aisr-core`.

pub mod claims;
pub mod io;
pub mod report;
