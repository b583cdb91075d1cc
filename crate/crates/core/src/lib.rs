//! Bent vectorial functions over GF(2^n), the binary codes they span with
//! first-order Reed-Muller codes, and the 2-designs carried by those codes.

pub mod amcheck;
pub mod bentvec;
pub mod bits;
pub mod boolfun;
pub mod designs;
pub mod exec;
pub mod gf2e;
pub mod lincode;

pub use exec::Exec;
