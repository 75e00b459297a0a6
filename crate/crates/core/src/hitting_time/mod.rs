//! First-hitting-time densities of a molecule released at the start of slot
//! `k` and absorbed by the receiver, for every mobility regime.
//!
//! | regime | density |
//! |---|---|
//! | fixed TX, fixed RX | inverse Gaussian in `r0`, `D_m`, `sgn(d0)·v` |
//! | fixed TX, mobile RX | Lévy in `d̄_k`, `D_m + D_rx` |
//! | mobile TX, fixed RX | closed-form Gaussian-distance mixture of inverse Gaussians |
//! | mobile TX, mobile RX | the same mixture with zero relative drift |
//!
//! [`fht_pdf_numeric`] evaluates the mixture by quadrature and is the
//! independent check on the closed forms.

mod arrival;
mod density;
mod numeric;

pub use arrival::{
    arrival_table, fht_cdf, hitting_probability, ArrivalCache, ArrivalTable, SlotConvention,
};
pub use density::{
    fht_pdf, fht_pdf_fixed_tx_mobile_rx, fht_pdf_mobile_both, fht_pdf_mobile_tx_fixed_rx,
    ig_pdf, levy_pdf, mixture_pdf, HittingTimePdf,
};
pub use numeric::fht_pdf_numeric;
