//! Certified statements about `f(α)`: degree profiles, `U_m` witnesses,
//! lower-degree gap scans, prefix exception scans and simplicity checks.
//! Every certificate is a canonical JSON record that [`verify`] re-checks
//! from its own contents.

mod certificate;
mod exceptions;
mod profile;
mod scan;
mod simplicity;
mod witness;

pub use certificate::{
    alpha_from_json, alpha_to_json, verify, CertKind, Certificate, CHECKER_VERSION,
};
pub use exceptions::{exception_scan, ExceptionScan};
pub use profile::{degree_profile, DegreeProfile, ProfileRow};
pub use scan::{
    enumerate_box, lower_degree_scan, ScanParams, ScanResult, DEFAULT_SCAN_BUDGET,
    DEFAULT_SCAN_PRECISION,
};
pub use simplicity::simplicity_check;
pub use witness::um_witness;

/// Tolerance for every height enclosure that enters a certificate.
pub const HEIGHT_TOL: f64 = 1e-12;
