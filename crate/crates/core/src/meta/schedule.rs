/// Penalty magnitude at iteration `m`: `0.1 * exp(-0.025 m)`.
pub fn rho_schedule(m: usize) -> f64 {
    0.1 * (-0.025 * m as f64).exp()
}

/// Mutation probability at iteration `m` of `max_iters`: `0.05 + (M - m) / (10 M)`.
pub fn mutation_rate(m: usize, max_iters: usize) -> f64 {
    let big_m = max_iters as f64;
    0.05 + (big_m - m as f64) / (10.0 * big_m)
}
