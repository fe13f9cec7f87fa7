//! Parsers for the compact `kind:args` option syntax.

use swkb_core::inverse::{ShapeAnsatz, SpectrumSpec};
use swkb_core::piecewise::PiecewiseQuadratic;

use crate::CliError;

fn bad(what: &str, s: &str) -> CliError {
    CliError::Validation(format!("cannot parse {what} `{s}`"))
}

/// A real number: a decimal literal, a fraction `p/q` or `sqrt(x)`, with an
/// optional leading minus sign.
pub fn number(s: &str) -> Result<f64, CliError> {
    let t = s.trim();
    if let Some(rest) = t.strip_prefix('-') {
        return number(rest).map(|v| -v);
    }
    let v = if let Some(inner) = t.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
        let v = number(inner)?;
        if v < 0.0 {
            return Err(bad("number", s));
        }
        v.sqrt()
    } else if let Some((p, q)) = t.split_once('/') {
        number(p)? / number(q)?
    } else {
        t.parse::<f64>().map_err(|_| bad("number", s))?
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad("number", s))
    }
}

pub fn numbers(s: &str, count: usize, what: &str) -> Result<Vec<f64>, CliError> {
    let v = s.split(',').map(number).collect::<Result<Vec<_>, _>>()?;
    if v.len() != count {
        return Err(CliError::Validation(format!("{what} needs {count} comma-separated values, got `{s}`")));
    }
    Ok(v)
}

pub fn range(s: &str) -> Result<(f64, f64), CliError> {
    let v = numbers(s, 2, "a range")?;
    if v[0] >= v[1] {
        return Err(CliError::Validation(format!("empty range `{s}`")));
    }
    Ok((v[0], v[1]))
}

pub fn indices(s: &str) -> Result<Vec<usize>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| t.trim().parse::<usize>().map_err(|_| bad("index list", s))).collect()
}

fn split<'a>(s: &'a str, what: &str) -> Result<(&'a str, &'a str), CliError> {
    s.split_once(':').ok_or_else(|| bad(what, s))
}

/// `gamma:p/q`, `step:a` or `stepramp:a,g`.
pub fn potential(s: &str) -> Result<PiecewiseQuadratic, CliError> {
    let (kind, args) = split(s, "potential")?;
    let pot = match kind {
        "gamma" => {
            let (p, q) = args.split_once('/').unwrap_or((args, "1"));
            let p = p.trim().parse::<u64>().map_err(|_| bad("potential", s))?;
            let q = q.trim().parse::<u64>().map_err(|_| bad("potential", s))?;
            PiecewiseQuadratic::gamma_modulated(p, q)
        }
        "step" => PiecewiseQuadratic::step(number(args)?),
        "stepramp" => {
            let v = numbers(args, 2, "stepramp")?;
            PiecewiseQuadratic::step_ramp(v[0], v[1])
        }
        _ => return Err(bad("potential", s)),
    };
    Ok(pot?)
}

/// `linear:c`, `quad:c1,c2` or `file:PATH` (levels separated by whitespace,
/// commas or newlines; `#` starts a comment).
pub fn spectrum(s: &str, hbar: f64) -> Result<SpectrumSpec, CliError> {
    let (kind, args) = split(s, "spectrum")?;
    let spec = match kind {
        "linear" => SpectrumSpec::linear(number(args)?, hbar),
        "quad" => {
            let v = numbers(args, 2, "quad")?;
            SpectrumSpec::quadratic(v[0], v[1], hbar)
        }
        "file" => {
            let text = std::fs::read_to_string(args).map_err(|e| CliError::Validation(format!("{args}: {e}")))?;
            let levels = text
                .lines()
                .map(|l| l.split('#').next().unwrap_or(""))
                .flat_map(|l| l.split(|c: char| c == ',' || c.is_whitespace()))
                .filter(|t| !t.is_empty())
                .map(number)
                .collect::<Result<Vec<_>, _>>()?;
            SpectrumSpec::tabulated(&levels, hbar)
        }
        _ => return Err(bad("spectrum", s)),
    };
    Ok(spec?)
}

/// `mirror`, `gamma:G`, `product:X0` or `tanprod:X0`.
pub fn ansatz(s: &str) -> Result<ShapeAnsatz, CliError> {
    let a = match s.split_once(':') {
        None if s == "mirror" => ShapeAnsatz::Mirror,
        Some(("gamma", v)) => ShapeAnsatz::GammaMirror { gamma: number(v)? },
        Some(("product", v)) => ShapeAnsatz::Product { x0: number(v)? },
        Some(("tanprod", v)) => ShapeAnsatz::TanProduct { x0: number(v)? },
        _ => return Err(bad("ansatz", s)),
    };
    a.validate()?;
    Ok(a)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DarbouxMode {
    Crum(usize),
    KreinAdler(usize),
    IsoSequence,
}

pub fn darboux_mode(s: &str) -> Result<DarbouxMode, CliError> {
    let parse = |v: &str| v.parse::<usize>().map_err(|_| bad("mode", s));
    match s.split_once(':') {
        None if s == "isoseq" => Ok(DarbouxMode::IsoSequence),
        Some(("crum", v)) => Ok(DarbouxMode::Crum(parse(v)?)),
        Some(("ka", v)) => Ok(DarbouxMode::KreinAdler(parse(v)?)),
        _ => Err(bad("mode", s)),
    }
}
