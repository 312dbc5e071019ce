//! Brute-force oracles, the recursive quasi-kernel construction, and the
//! certified kernel-shrinking procedure.

mod bruteforce;
mod certificate;
mod chvatal;
mod shrink;

pub use bruteforce::{
    enumerate_kernels, find_kernel, min_quasi_kernel, SizeLexSubsets, SolveLimits,
};
pub use certificate::{
    verify_certificate, CertificateCheck, CertificateError, CertificateMismatch, Removal,
    ShrinkCertificate, Verdicts,
};
pub use chvatal::chvatal_quasi_kernel;
pub use shrink::{shrink_kernel, Invariant, Precondition, ShrinkError, ShrinkOptions};
