//! Differential creative telescoping for bivariate rational integrands.
//!
//! Given `f(x, y)` rational, a telescoper is an operator
//! `L = sum c_i(x) D_x^i` with `L·f = D_y g` for some rational certificate
//! `g`: integrating over `y` then turns `L` into an annihilator of the
//! parametrized integral. Two routes are implemented — iterated Hermite
//! reduction, which finds the minimal order, and a fixed-order ansatz with
//! an a-priori order bound — together with an order-degree scan that measures
//! the trade-off between operator order and coefficient degree.

mod az;
mod hermite;
mod odcurve;
mod reduction;

pub use az::az_ct;
pub use hermite::{hermite_reduce, HermiteReductionResult};
pub use odcurve::{order_degree_scan, scan_to_csv, OrderDegreePoint};
pub use reduction::{reduction_ct, verify_ct_diff, DiffTelescoperResult};
