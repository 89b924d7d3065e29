//! Host crate for the `acceptance` suite, which runs the library's
//! acceptance criteria and prints one PASS/FAIL line per criterion.
//!
//! The suite lives in its own package so that it runs after every other
//! test target of the workspace.
