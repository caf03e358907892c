//! Exact solvers for the packing/covering programs of a channel: the
//! fractional pair `p* = κ*`, the integer programs `p` and `κ` by branch and
//! bound, and the fractional clique cover `θ*`.

mod bitset;
mod clique;
mod integer;
mod modular;
mod simplex;

pub use clique::{clique_channel, maximal_cliques, theta_star, CliqueConfig};
pub use integer::{integer_covering, integer_packing, max_independent_set, min_dominating_set, IntConfig, IntResult};
pub use simplex::PivotRule;

use crate::channel::{Channel, Side, WeightVec};
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LpMethod {
    /// Pivot an `f64` tableau to a candidate optimal basis, then recover the
    /// basic packing and cover exactly and verify both. Falls back to
    /// [`LpMethod::ExactSimplex`] when the candidate does not verify.
    #[default]
    GuidedExact,
    /// Simplex pivoting over exact rationals throughout.
    ExactSimplex,
}

#[derive(Debug, Clone)]
pub struct LpConfig {
    /// Largest `|X| + |Y|` accepted.
    pub max_size: usize,
    pub pivot_rule: PivotRule,
    pub method: LpMethod,
    /// Try the uniform packing and cover first. They have equal weight, and
    /// are then both optimal, exactly when the channel is biregular.
    pub uniform_presolve: bool,
}

impl Default for LpConfig {
    fn default() -> Self {
        LpConfig {
            max_size: 6000,
            pivot_rule: PivotRule::default(),
            method: LpMethod::default(),
            uniform_presolve: true,
        }
    }
}

/// Optimal value of the fractional packing program with a primal packing and
/// a dual cover of equal weight.
#[derive(Debug, Clone)]
pub struct LpResult {
    pub value: Rational,
    pub primal: WeightVec,
    pub dual: WeightVec,
    /// Pivots of whichever simplex produced the final basis; zero when the
    /// uniform presolve settled the program.
    pub pivots: usize,
    /// Whether the exact fallback ran.
    pub exact_fallback: bool,
}

/// `p*(A) = max 1ᵀw s.t. Aᵀw <= 1, w >= 0`, solved exactly. The returned
/// packing and cover are verified against the channel before returning.
pub fn fractional_packing(a: &Channel, config: &LpConfig) -> Result<LpResult> {
    let size = a.num_inputs() + a.num_outputs();
    if size > config.max_size {
        return Err(Error::CapExceeded { what: "LP size |X|+|Y|", size, cap: config.max_size });
    }
    if config.uniform_presolve {
        if let Some(res) = uniform_pair(a) {
            return Ok(res);
        }
    }
    let columns: Vec<Vec<usize>> = (0..a.num_inputs()).map(|x| a.input_neighbors(x).collect()).collect();
    if config.method == LpMethod::GuidedExact {
        if let Some(res) = guided(a, &columns, config.pivot_rule) {
            return Ok(res);
        }
    }
    let sol = simplex::solve_packing(a.num_outputs(), &columns, config.pivot_rule);
    let value = certify(a, &sol.primal, &sol.dual).map_err(Error::Certificate)?;
    if value != sol.value {
        return Err(Error::Certificate(format!("tableau value {} != certified {value}", sol.value)));
    }
    Ok(LpResult {
        value,
        primal: WeightVec::new(Side::Input, sol.primal),
        dual: WeightVec::new(Side::Output, sol.dual),
        pivots: sol.pivots,
        exact_fallback: config.method == LpMethod::GuidedExact,
    })
}

/// `w = 1/Δ_Y` on every input and `z = 1/δ_X` on every output are feasible
/// by the degree bounds alone. When their weights `|X|/Δ_Y` and `|Y|/δ_X`
/// agree, both are optimal.
fn uniform_pair(a: &Channel) -> Option<LpResult> {
    let max_out = (0..a.num_outputs()).map(|y| a.output_degree(y)).max()?;
    let min_in = (0..a.num_inputs()).map(|x| a.input_degree(x)).min()?;
    if min_in == 0 || a.num_inputs() * min_in != a.num_outputs() * max_out {
        return None;
    }
    let value = Rational::new(a.num_inputs().into(), max_out.into());
    let primal = vec![Rational::new(1.into(), max_out.into()); a.num_inputs()];
    let dual = vec![Rational::new(1.into(), min_in.into()); a.num_outputs()];
    Some(LpResult {
        value,
        primal: WeightVec::new(Side::Input, primal),
        dual: WeightVec::new(Side::Output, dual),
        pivots: 0,
        exact_fallback: false,
    })
}

/// Checks feasibility of both vectors and equality of their weights, which
/// proves both optimal.
fn certify(a: &Channel, primal: &[Rational], dual: &[Rational]) -> std::result::Result<Rational, String> {
    let p = a.verify_packing(primal).map_err(|v| format!("packing infeasible: {v}"))?;
    let d = a.verify_cover(dual).map_err(|v| format!("cover infeasible: {v}"))?;
    if p != d {
        return Err(format!("duality gap: packing {p}, cover {d}"));
    }
    Ok(p)
}

/// Basic inputs and tight outputs of a candidate optimal basis, found in
/// floating point on whichever program has the smaller tableau.
fn float_basis(a: &Channel, columns: &[Vec<usize>], rule: PivotRule) -> (Vec<usize>, Vec<usize>, usize) {
    let (nx, ny) = (a.num_inputs(), a.num_outputs());
    let max_pivots = 50 * (nx + ny) + 1000;
    if nx <= ny {
        let out_columns: Vec<Vec<usize>> = (0..ny).map(|y| a.output_neighbors(y).collect()).collect();
        let sol = simplex::float_dual_cover(nx, &out_columns, max_pivots);
        // Basic outputs are tight packing rows; inputs with a nonbasic
        // slack carry the basic packing weights.
        let mut slack_basic = vec![false; nx];
        let mut tight = Vec::new();
        for &b in &sol.basis {
            if b < ny {
                tight.push(b);
            } else {
                slack_basic[b - ny] = true;
            }
        }
        tight.sort_unstable();
        let basic = (0..nx).filter(|&x| !slack_basic[x]).collect();
        return (basic, tight, sol.pivots);
    }
    let sol = simplex::float_simplex(ny, columns, rule, max_pivots);
    let basic: Vec<usize> = sol.basis.iter().copied().filter(|&b| b < nx).collect();
    let mut slack_basic = vec![false; ny];
    for &b in &sol.basis {
        if b >= nx {
            slack_basic[b - nx] = true;
        }
    }
    let tight = (0..ny).filter(|&y| !slack_basic[y]).collect();
    (basic, tight, sol.pivots)
}

fn guided(a: &Channel, columns: &[Vec<usize>], rule: PivotRule) -> Option<LpResult> {
    let (nx, ny) = (a.num_inputs(), a.num_outputs());
    let (basic, tight, pivots) = float_basis(a, columns, rule);
    if tight.len() != basic.len() {
        return None;
    }
    let mut tight_pos = vec![usize::MAX; ny];
    for (k, &y) in tight.iter().enumerate() {
        tight_pos[y] = k;
    }
    let basic_pos: std::collections::HashMap<usize, usize> = basic.iter().enumerate().map(|(k, &x)| (x, k)).collect();

    // primal: Σ_{x basic, y ∈ N(x)} w_x = 1 for each tight y
    let primal_rows: Vec<Vec<usize>> =
        tight.iter().map(|&y| a.output_neighbors(y).filter_map(|x| basic_pos.get(&x).copied()).collect()).collect();
    // dual: Σ_{y tight, y ∈ N(x)} z_y = 1 for each basic x
    let dual_rows: Vec<Vec<usize>> = basic
        .iter()
        .map(|&x| a.input_neighbors(x).filter(|&y| tight_pos[y] != usize::MAX).map(|y| tight_pos[y]).collect())
        .collect();
    let max_primes = 400;
    let wb = modular::solve_unit_rhs(&primal_rows, max_primes)?;
    let zt = modular::solve_unit_rhs(&dual_rows, max_primes)?;

    let mut primal = vec![Rational::default(); nx];
    for (k, &x) in basic.iter().enumerate() {
        primal[x] = wb[k].clone();
    }
    let mut dual = vec![Rational::default(); ny];
    for (k, &y) in tight.iter().enumerate() {
        dual[y] = zt[k].clone();
    }
    let value = certify(a, &primal, &dual).ok()?;
    Some(LpResult {
        value,
        primal: WeightVec::new(Side::Input, primal),
        dual: WeightVec::new(Side::Output, dual),
        pivots,
        exact_fallback: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::zoo::deletion_channel;

    #[test]
    fn both_methods_agree_on_small_deletion_channels() {
        for n in 2..=6 {
            let a = deletion_channel(n).unwrap();
            let g = fractional_packing(&a, &LpConfig::default()).unwrap();
            let e =
                fractional_packing(&a, &LpConfig { method: LpMethod::ExactSimplex, ..LpConfig::default() }).unwrap();
            assert_eq!(g.value, e.value, "n = {n}");
            assert!(!g.exact_fallback);
        }
    }

    #[test]
    fn wide_channels_take_the_cover_side() {
        use crate::zoo::{erasure_substitution_channel, random_channel};
        use rand::SeedableRng;
        let exact = LpConfig { method: LpMethod::ExactSimplex, uniform_presolve: false, ..LpConfig::default() };
        let guided = LpConfig { uniform_presolve: false, ..LpConfig::default() };
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut chans: Vec<Channel> = (0..20).map(|_| random_channel(6, 11, 0.3, &mut rng)).collect();
        chans.push(erasure_substitution_channel(2, 5, 2, 1).unwrap());
        chans.push(erasure_substitution_channel(2, 4, 1, 0).unwrap());
        for a in chans {
            assert!(a.num_inputs() < a.num_outputs());
            let g = fractional_packing(&a, &guided).unwrap();
            assert!(!g.exact_fallback);
            assert!(g.pivots > 0);
            assert_eq!(g.value, fractional_packing(&a, &exact).unwrap().value);
        }
    }

    #[test]
    fn uniform_presolve_only_fires_on_biregular_channels() {
        use crate::zoo::erasure_substitution_channel;
        let a = erasure_substitution_channel(3, 4, 1, 1).unwrap();
        let r = fractional_packing(&a, &LpConfig::default()).unwrap();
        assert_eq!(r.pivots, 0);
        assert_eq!(Some(r.value.clone()), crate::bounds::regular_value(&a));
        assert_eq!(certify(&a, &r.primal.values, &r.dual.values).unwrap(), r.value);
        let off = LpConfig { uniform_presolve: false, ..LpConfig::default() };
        assert_eq!(fractional_packing(&a, &off).unwrap().value, r.value);
        // Deletion channels are not output-regular.
        assert!(fractional_packing(&deletion_channel(5).unwrap(), &LpConfig::default()).unwrap().pivots > 0);
    }

    #[test]
    fn known_values() {
        let a = deletion_channel(6).unwrap();
        assert_eq!(fractional_packing(&a, &LpConfig::default()).unwrap().value, ratio(41, 4));
        let i = Channel::identity(5);
        assert_eq!(fractional_packing(&i, &LpConfig::default()).unwrap().value, int(5));
    }

    #[test]
    fn size_cap() {
        let a = deletion_channel(6).unwrap();
        let cfg = LpConfig { max_size: 10, ..LpConfig::default() };
        assert!(matches!(fractional_packing(&a, &cfg), Err(Error::CapExceeded { .. })));
    }
}
