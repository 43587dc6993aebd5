//! Acceptance gate. Each test checks one headline claim end to end and
//! prints a single verdict line, `PASS` or `FAIL`, with the measured
//! evidence; a failing claim panics after printing, so the suite result
//! mirrors the verdict lines.

mod cli;
mod criteria;
