/// How an energy value was obtained.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EnergyMethod {
    /// Coefficient series in the degree masses `A_k`.
    #[default]
    Series,
    /// Double sum over a point cloud without self-pairs.
    Discrete,
    /// Minimized quadratic form over the simplex.
    Minimized,
}

impl EnergyMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            EnergyMethod::Series => "series",
            EnergyMethod::Discrete => "discrete",
            EnergyMethod::Minimized => "minimized",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct EnergyReport {
    pub method: EnergyMethod,
    pub alpha: f64,
    /// Best estimate; `+inf` when flagged divergent or singular.
    pub value: f64,
    /// Raw truncated sum (series) or the sum itself (discrete).
    pub partial_sum: f64,
    /// Extrapolated remainder added to `partial_sum` (series only).
    pub tail_estimate: f64,
    /// Magnitude of the final series term.
    pub last_term: f64,
    /// Fitted `p` in `term_k ~ k^{-p}`, when enough terms are nonzero.
    pub decay_exponent: Option<f64>,
    pub truncation: Option<u32>,
    pub iterations: Option<usize>,
    /// Set for `alpha < 2`, where the series is only comparable to the energy.
    pub comparable_form: bool,
    pub diverged: bool,
    pub converged: bool,
    /// Pairs of distinct points closer than the coincidence tolerance.
    pub coincident_pairs: usize,
}
