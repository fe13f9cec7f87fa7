use clap::{Args, Subcommand};
use serde::{Deserialize, Serialize};

use swkb_core::catalog::{
    family_table, make_ces, make_conventional, make_krein_adler, make_multi_indexed, Conventional, DeletionSet, KaBase, MiBase,
    Params, PdemKind, SuperpotentialSpec,
};
use swkb_core::inverse::{fit_slopes, reconstruct, Branch};
use swkb_core::isospectral::{darboux_crum, iso_sequence, krein_adler, Deformed, StateSet};
use swkb_core::numeric::quad::QuadConfig;
use swkb_core::piecewise::{eigenfunction, eigenvalues, hermite_states, lowest_levels, StateTag};
use swkb_core::swkb::{integral_at, quantize_energy, swkb_extended_integral_with, swkb_integral_with, SwkbConfig, SwkbReport};
use swkb_core::wigner::{wigner_grid, PhaseGrid};

use crate::output::{six_digits, Cell, Table};
use crate::parse::{self, DarbouxMode};
use crate::{CliError, Global};

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct CatalogArgs {
    #[command(subcommand)]
    pub action: CatalogAction,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CatalogAction {
    /// Every family with its parameters and constraints.
    List,
    /// One family, with an admissible example parameter set.
    Show { name: String },
}

pub fn catalog(global: &Global, a: &CatalogArgs) -> Result<Table, CliError> {
    let mut t = Table::new(&["name", "kind", "parameters", "constraints", "spectrum"]);
    let rows = family_table();
    match &a.action {
        CatalogAction::List => {
            for r in rows {
                t.push(vec![r.name.into(), r.kind.into(), r.parameters.into(), r.constraints.into(), r.spectrum.into()]);
            }
        }
        CatalogAction::Show { name } => {
            let fam = Conventional::from_name(name);
            let key = fam.map_or(name.as_str(), |f| f.name());
            let r = rows
                .iter()
                .find(|r| r.name == key)
                .ok_or_else(|| CliError::Validation(format!("unknown family `{name}`")))?;
            t.push(vec![r.name.into(), r.kind.into(), r.parameters.into(), r.constraints.into(), r.spectrum.into()]);
            if let Some(f) = fam {
                let p = f.example_params().with_units(global.hbar, global.omega);
                let spec = make_conventional(f, &p)?;
                t.note(format!("example parameters: {}", serde_json::to_string(&p).expect("params serialize")));
                t.note(match spec.n_max() {
                    Some(m) => format!("bound states: n = 0..={m}"),
                    None => "bound states: infinitely many".to_string(),
                });
            }
        }
    }
    Ok(t)
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct SwkbArgs {
    /// Family name from `catalog list`, or one of the aliases xlag1, xlag2,
    /// xjac1, xjac2 for the single-seed exceptional systems.
    #[arg(long)]
    pub family: String,
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub h: Option<f64>,
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub e2: Option<f64>,
    /// Krein–Adler: delete the pair {d, d+1}.
    #[arg(long)]
    pub d: Option<usize>,
    /// Multi-indexed: type I seed indices, comma separated.
    #[arg(long, default_value = "")]
    pub d1: String,
    /// Multi-indexed: type II seed indices, comma separated.
    #[arg(long, default_value = "")]
    pub d2: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub a: Option<f64>,
    /// Lowest level reported.
    #[arg(long, default_value_t = 0)]
    pub n_min: usize,
    /// Highest level reported (capped at the last bound state).
    #[arg(long, default_value_t = 10)]
    pub n_max: usize,
    /// Use the mass-weighted integral of a position-dependent-mass system.
    #[arg(long)]
    pub eta: bool,
    /// Report turning intervals and the integral at this energy instead.
    #[arg(long, allow_hyphen_values = true)]
    pub energy: Option<f64>,
}

fn need<T: Copy>(v: Option<T>, name: &str, family: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Validation(format!("family `{family}` needs --{name}")))
}

pub fn build_spec(global: &Global, a: &SwkbArgs) -> Result<SuperpotentialSpec, CliError> {
    let mut p = Params::default().with_units(global.hbar, global.omega);
    p.g = a.g;
    p.h = a.h;
    p.mu = a.mu;
    p.e2 = a.e2;
    let fam = a.family.to_ascii_lowercase();
    let mi = |base, d1: Vec<usize>, d2: Vec<usize>| make_multi_indexed(base, &DeletionSet::new(d1), &DeletionSet::new(d2), &p);
    let spec = match fam.as_str() {
        "ka-h" => make_krein_adler(KaBase::Hermite, need(a.d, "d", &fam)?, &p),
        "ka-l" => make_krein_adler(KaBase::Laguerre, need(a.d, "d", &fam)?, &p),
        "ka-j" => make_krein_adler(KaBase::Jacobi, need(a.d, "d", &fam)?, &p),
        "mi-l" => mi(MiBase::Laguerre, parse::indices(&a.d1)?, parse::indices(&a.d2)?),
        "mi-j" => mi(MiBase::Jacobi, parse::indices(&a.d1)?, parse::indices(&a.d2)?),
        "xlag1" => mi(MiBase::Laguerre, vec![1], vec![]),
        "xlag2" => mi(MiBase::Laguerre, vec![], vec![1]),
        "xjac1" => mi(MiBase::Jacobi, vec![1], vec![]),
        "xjac2" => mi(MiBase::Jacobi, vec![], vec![1]),
        "ces" => make_ces(need(a.b, "b", &fam)?, need(a.beta, "beta", &fam)?, &p),
        "deformed-ho" => swkb_core::catalog::make_pdem(PdemKind::DeformedHo { alpha: need(a.alpha, "alpha", &fam)? }, &p),
        "semiconfined" => swkb_core::catalog::make_pdem(PdemKind::Semiconfined { a: need(a.a, "a", &fam)? }, &p),
        other => match Conventional::from_name(other) {
            Some(f) => make_conventional(f, &p),
            None => return Err(CliError::Validation(format!("unknown family `{}`", a.family))),
        },
    };
    Ok(spec?)
}

fn intervals_text(iv: &[(f64, f64)]) -> String {
    iv.iter().map(|(a, b)| format!("{a:?}:{b:?}")).collect::<Vec<_>>().join(";")
}

pub fn swkb(global: &Global, a: &SwkbArgs) -> Result<Table, CliError> {
    let spec = build_spec(global, a)?;
    let mut cfg = SwkbConfig::default();
    if let Some(t) = global.tol {
        cfg.quad = QuadConfig::new(t, t);
    }
    if let Some(e) = a.energy {
        let (i, iv) = integral_at(&spec, e, a.eta, &cfg)?;
        let mut t = Table::new(&["energy", "integral", "i_over_pi_hbar", "intervals", "turning_points"]);
        t.push(vec![
            e.into(),
            i.into(),
            (i / (std::f64::consts::PI * spec.hbar())).into(),
            iv.len().into(),
            intervals_text(&iv).into(),
        ]);
        return Ok(t);
    }
    if a.n_min > a.n_max {
        return Err(CliError::Validation(format!("empty level range {}..={}", a.n_min, a.n_max)));
    }
    let top = spec.n_max().map_or(a.n_max, |m| m.min(a.n_max));
    let mut t = Table::new(&[
        "n",
        "energy",
        "integral",
        "i_over_pi_hbar",
        "i_over_pi_hbar_6",
        "err",
        "err_rescaled",
        "delta",
        "intervals",
        "turning_points",
    ]);
    for n in a.n_min..=top {
        let r: SwkbReport = if a.eta { swkb_extended_integral_with(&spec, n, &cfg)? } else { swkb_integral_with(&spec, n, &cfg)? };
        t.push(vec![
            r.n.into(),
            r.energy.into(),
            r.integral.into(),
            r.i_over_pi_hbar.into(),
            six_digits(r.i_over_pi_hbar).into(),
            r.err.into(),
            r.err_rescaled.into(),
            r.delta.into(),
            r.intervals.len().into(),
            intervals_text(&r.intervals).into(),
        ]);
    }
    if top < a.n_max {
        t.note(format!("capped at the last bound state n = {top}"));
    }
    Ok(t)
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct InvertArgs {
    /// linear:c, quad:c1,c2 or file:PATH.
    #[arg(long)]
    pub spectrum: String,
    /// mirror, gamma:G, product:X0 or tanprod:X0.
    #[arg(long)]
    pub ansatz: String,
    /// Largest W² sampled.
    #[arg(long, default_value_t = 9.0)]
    pub wsq_max: f64,
    /// Samples per branch.
    #[arg(long, default_value_t = 60)]
    pub points: usize,
    /// Feed the reconstruction back into the direct problem and report the
    /// quantized energies of levels 0..=N instead of the samples.
    #[arg(long)]
    pub levels: Option<usize>,
}

pub fn invert(global: &Global, a: &InvertArgs) -> Result<Table, CliError> {
    let spec = parse::spectrum(&a.spectrum, global.hbar)?;
    let ansatz = parse::ansatz(&a.ansatz)?;
    if a.points < 2 || !(a.wsq_max > 0.0) {
        return Err(CliError::Validation("--points must be at least 2 and --wsq-max positive".into()));
    }
    let grid: Vec<f64> = (1..=a.points).map(|i| a.wsq_max * i as f64 / a.points as f64).collect();
    let rec = reconstruct(&spec, ansatz, &grid)?;
    let mut t;
    if let Some(top) = a.levels {
        let direct = rec.to_spec("reconstruction");
        t = Table::new(&["n", "target", "quantized", "error"]);
        for n in 0..=top {
            let want = spec.energy(n as f64)?;
            let got = quantize_energy(&direct, n)?;
            t.push(vec![n.into(), want.into(), got.into(), (got - want).into()]);
        }
    } else {
        t = Table::new(&["branch", "x", "w", "w_squared"]);
        for p in &rec.points {
            let (label, w) = match p.branch {
                Branch::Left => ("left", -p.value),
                Branch::Right => ("right", p.value),
            };
            t.push(vec![label.into(), p.x.into(), w.into(), (p.value * p.value).into()]);
        }
    }
    if let Some(fit) = rec.closed_form() {
        t.note(format!("closed form {} (max deviation {:e})", fit.form, fit.max_residual));
    }
    if matches!(ansatz, swkb_core::inverse::ShapeAnsatz::GammaMirror { .. } | swkb_core::inverse::ShapeAnsatz::Mirror) {
        let (l, r) = fit_slopes(&rec);
        t.note(format!("fitted slopes: left {l}, right {r}"));
    }
    Ok(t)
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct SpectrumArgs {
    /// gamma:p/q, step:a or stepramp:a,g.
    #[arg(long, allow_hyphen_values = true)]
    pub pot: String,
    /// Number of lowest levels.
    #[arg(long, default_value_t = 7)]
    pub count: usize,
    /// Report every level in this energy window instead, as lo,hi.
    #[arg(long, allow_hyphen_values = true)]
    pub range: Option<String>,
}

pub fn spectrum(_global: &Global, a: &SpectrumArgs) -> Result<Table, CliError> {
    let pot = parse::potential(&a.pot)?;
    let sols = match &a.range {
        Some(r) => {
            let (lo, hi) = parse::range(r)?;
            eigenvalues(&pot, lo, hi)?
        }
        None => {
            if a.count == 0 {
                return Err(CliError::Validation("--count must be positive".into()));
            }
            lowest_levels(&pot, a.count)?
        }
    };
    let mut t = Table::new(&["level", "energy", "energy_6", "exact", "residual", "kind", "left_order", "right_order", "ratio"]);
    for s in &sols {
        let (kind, lo, ro, ratio) = match s.tag {
            StateTag::Hermite { left_order, right_order, ratio } => ("hermite", Some(left_order), Some(right_order), Some(ratio)),
            StateTag::Hypergeometric => ("hypergeometric", None, None, None),
        };
        t.push(vec![
            s.nodes.into(),
            s.energy.into(),
            six_digits(s.energy).into(),
            s.exact.into(),
            s.residual.into(),
            kind.into(),
            lo.into(),
            ro.into(),
            ratio.into(),
        ]);
    }
    Ok(t)
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct HermiteArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub pot: String,
    /// Highest energy searched.
    #[arg(long, default_value_t = 100.0)]
    pub e_max: f64,
}

/// The common gap in level index between consecutive exact states, when
/// there are at least two and the gaps agree.
fn exact_period(levels: &[usize]) -> Option<usize> {
    let gaps: Vec<usize> = levels.windows(2).map(|w| w[1] - w[0]).collect();
    let first = *gaps.first()?;
    gaps.iter().all(|&g| g == first).then_some(first)
}

pub fn hermite(_global: &Global, a: &HermiteArgs) -> Result<Table, CliError> {
    let pot = parse::potential(&a.pot)?;
    if !a.e_max.is_finite() {
        return Err(CliError::Validation("--e-max must be finite".into()));
    }
    let states = hermite_states(&pot, a.e_max)?;
    let levels: Vec<usize> = states.iter().map(|s| s.n).collect();
    let period = exact_period(&levels);
    let mut t = Table::new(&["level", "energy", "left_order", "right_order", "ratio", "ratio_exact", "equidistant_every"]);
    for s in &states {
        t.push(vec![
            s.n.into(),
            s.energy.into(),
            s.left_order.into(),
            s.right_order.into(),
            s.ratio.into(),
            s.ratio_exact.as_ref().map(|r| r.to_string()).into(),
            period.into(),
        ]);
    }
    match period {
        Some(n) => t.note(format!("equidistant every {n} states")),
        None if states.len() < 2 => t.note(format!("fewer than two exact states below E = {}", a.e_max)),
        None => t.note("exact states are not evenly spaced in level index"),
    }
    Ok(t)
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct DarbouxArgs {
    /// Undeformed potential; isoseq needs step:4L.
    #[arg(long, allow_hyphen_values = true)]
    pub pot: String,
    /// crum:M deletes the lowest M states, ka:D the pair {D, D+1}, isoseq
    /// the ℓ negative levels of the a = 4ℓ step.
    #[arg(long)]
    pub mode: String,
    /// Retained states dumped next to the potential.
    #[arg(long, default_value_t = 3)]
    pub states: usize,
    /// Sampling window lo,hi (defaults to the resolved range, clipped to ±6).
    #[arg(long, allow_hyphen_values = true)]
    pub range: Option<String>,
    #[arg(long, default_value_t = 241)]
    pub points: usize,
    /// Re-solve the deformed potential and report its lowest K levels instead.
    #[arg(long)]
    pub resolve: Option<usize>,
}

fn deform(a: &DarbouxArgs) -> Result<Deformed, CliError> {
    let pot = parse::potential(&a.pot)?;
    let keep = a.states.max(a.resolve.unwrap_or(0)) + 1;
    let d = match parse::darboux_mode(&a.mode)? {
        DarbouxMode::Crum(m) => darboux_crum(StateSet::solve(&pot, m + keep)?, m)?,
        DarbouxMode::KreinAdler(d) => krein_adler(StateSet::solve(&pot, d + 2 + keep)?, &[d, d + 1])?,
        DarbouxMode::IsoSequence => {
            let ell = pot
                .step_ell()
                .ok_or_else(|| CliError::Validation(format!("isoseq needs a step potential with a = 4ℓ, got `{}`", a.pot)))?;
            iso_sequence(ell, keep)?
        }
    };
    Ok(d)
}

pub fn darboux(_global: &Global, a: &DarbouxArgs) -> Result<Table, CliError> {
    let d = deform(a)?;
    let deleted = d.deleted().iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    if let Some(k) = a.resolve {
        let want = d.energies();
        let got = d.resolve_spectrum(k)?;
        let mut t = Table::new(&["level", "base_level", "expected", "resolved", "error"]);
        for (i, g) in got.iter().enumerate() {
            let base = d.retained().get(i).copied();
            let w = want.get(i).copied();
            t.push(vec![i.into(), base.into(), w.into(), (*g).into(), w.map(|w| g - w).into()]);
        }
        t.note(format!("deleted levels {{{deleted}}}"));
        return Ok(t);
    }
    let (lo, hi) = match &a.range {
        Some(r) => parse::range(r)?,
        None => {
            let (lo, hi) = d.resolved_range();
            (lo.max(-6.0), hi.min(6.0))
        }
    };
    let (rlo, rhi) = d.resolved_range();
    if lo < rlo || hi > rhi {
        return Err(CliError::Validation(format!("range [{lo}, {hi}] exceeds the resolved range [{rlo}, {rhi}]")));
    }
    let count = a.points.max(3) | 1;
    let shown: Vec<usize> = d.retained().iter().copied().take(a.states).collect();
    let mut cols = vec!["x".to_string(), "potential".to_string()];
    cols.extend(shown.iter().map(|n| format!("psi_{n}")));
    let pot = d.sample_potential(lo, hi, count)?;
    let states = shown.iter().map(|&n| d.normalized_state(n, lo, hi, count)).collect::<Result<Vec<_>, _>>()?;
    let mut t = Table { columns: cols, ..Table::default() };
    for (i, &(x, v)) in pot.iter().enumerate() {
        let mut row: Vec<Cell> = vec![x.into(), v.into()];
        row.extend(states.iter().map(|s| Cell::from(s[i].1)));
        t.push(row);
    }
    t.note(format!("deleted levels {{{deleted}}}"));
    t.note(format!(
        "retained energies: {}",
        d.energies().iter().take(a.states).map(|e| format!("{e}")).collect::<Vec<_>>().join(", ")
    ));
    Ok(t)
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct WignerArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub pot: String,
    /// Level index of the state.
    #[arg(long, default_value_t = 0)]
    pub level: usize,
    /// x_min,x_max,nx,p_max,np
    #[arg(long, allow_hyphen_values = true, default_value = "-4,4,41,4,41")]
    pub grid: String,
}

pub fn wigner(_global: &Global, a: &WignerArgs) -> Result<Table, CliError> {
    let pot = parse::potential(&a.pot)?;
    let g = parse::numbers(&a.grid, 5, "--grid")?;
    let count = |v: f64| {
        (v.fract() == 0.0 && v >= 2.0)
            .then_some(v as usize)
            .ok_or_else(|| CliError::Validation(format!("grid point counts must be integers ≥ 2, got {v}")))
    };
    let grid = PhaseGrid::new(g[0], g[1], count(g[2])?, g[3], count(g[4])?)?;
    let sols = lowest_levels(&pot, a.level + 1)?;
    let ef = eigenfunction(&pot, &sols[a.level])?;
    let map = wigner_grid(&ef, grid)?;
    let mut t = Table::new(&["x", "p", "w"]);
    let ps = grid.ps();
    for (i, x) in grid.xs().into_iter().enumerate() {
        for (j, &p) in ps.iter().enumerate() {
            t.push(vec![x.into(), p.into(), map.values[i][j].into()]);
        }
    }
    t.note(format!("energy {}", sols[a.level].energy));
    t.note(format!("normalization {}", map.normalization));
    t.note(format!("position marginal error {:e}", map.marginal_error));
    t.note(format!("minimum {} at (p, x) = ({}, {})", map.minimum.0, map.minimum.1, map.minimum.2));
    Ok(t)
}
