//! Truncated summation of decaying series.

/// Outcome of [`sum_until`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub sum: f64,
    /// Magnitude of the last term added.
    pub last_term: f64,
    pub terms_used: usize,
    pub converged: bool,
}

/// Number of consecutive small terms required before stopping.
const QUIET_RUN: usize = 3;

/// Sum `term(start) + term(start + 1) + ...` until `|term_n| < rel_tol * |partial|`
/// holds for three consecutive indices, or `budget` terms have been added.
///
/// Terms are accumulated strictly in index order, so identical inputs give
/// bit-identical sums.
pub fn sum_until<F: FnMut(usize) -> f64>(
    mut term: F,
    start: usize,
    rel_tol: f64,
    budget: usize,
) -> SeriesResult {
    let mut sum = 0.0;
    let mut quiet = 0;
    let mut last = 0.0;
    for (used, n) in (start..).take(budget).enumerate() {
        let t = term(n);
        sum += t;
        last = t.abs();
        if last < rel_tol * sum.abs() || t == 0.0 {
            quiet += 1;
            if quiet == QUIET_RUN {
                return SeriesResult {
                    sum,
                    last_term: last,
                    terms_used: used + 1,
                    converged: true,
                };
            }
        } else {
            quiet = 0;
        }
    }
    SeriesResult {
        sum,
        last_term: last,
        terms_used: budget,
        converged: false,
    }
}
