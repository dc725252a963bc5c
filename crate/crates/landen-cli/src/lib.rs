//! Library surface of the command-line front end: input parsing and
//! output shaping, kept separate from `main` so they are unit-testable
//! and reusable.

pub mod input;
pub mod report;
