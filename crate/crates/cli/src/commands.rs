use crate::format::{fixed6, point, sig9, svg_line_chart, table};
use crate::{Case, Cli, Command, DomainArgs, DomainKind, Format, Global, MonomialArgs};
use monoconv::bounds::{self, RootResult, SigmaValue};
use monoconv::oracle::{self, Estimator, Side};
use monoconv::{hulls, polyrelax, Domain, Error, ErrorReport, FacetSystem, GridSpec, Monomial, Polynomial, Verdict};
use std::fs;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{0}")]
    Scale(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            Self::Usage(_) | Self::Io(_) => 1,
            Self::Verification(_) => 2,
            Self::Scale(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::ScaleExceeded { .. } => Self::Scale(format!("refused: {e}")),
            other => Self::Usage(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

pub fn run(cli: &Cli) -> CliResult<()> {
    let g = &cli.global;
    match &cli.command {
        Command::Bounds { mono, dom } => emit(g, &cmd_bounds(g, mono, dom)?),
        Command::Verify { case, mono, r, trials } => {
            let (text, ok) = cmd_verify(g, *case, mono, *r, *trials)?;
            emit(g, &text)?;
            if ok {
                Ok(())
            } else {
                Err(CliError::Verification("at least one check was violated".into()))
            }
        }
        Command::Figure1 { n_min, n_max, r } => cmd_figure1(g, *n_min, *n_max, r),
        Command::Facets { n } => emit(g, &cmd_facets(g, *n)?),
        Command::Gap { poly, certify } => emit(g, &cmd_gap(g, poly, *certify)?),
        Command::Sigma { mono, beta, dom } => emit(g, &cmd_sigma(g, mono, beta, dom)?),
        Command::Root { lambda1, lambda2 } => emit(g, &cmd_root(*lambda1, *lambda2)?),
    }
}

fn emit(g: &Global, text: &str) -> CliResult<()> {
    match &g.out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn format_or(g: &Global, default: Format, allowed: &[Format]) -> CliResult<Format> {
    let f = g.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CliError::Usage(format!("--format {f:?} is not available for this subcommand").to_lowercase()))
    }
}

fn monomial(m: &MonomialArgs) -> CliResult<Monomial> {
    match (&m.alpha, m.n) {
        (Some(a), None) => Ok(Monomial::new(a.clone())?),
        (Some(a), Some(n)) if a.len() == n => Ok(Monomial::new(a.clone())?),
        (Some(a), Some(n)) => Err(CliError::Usage(format!("--alpha has {} entries but --n is {n}", a.len()))),
        (None, Some(n)) => Ok(Monomial::multilinear(n)?),
        (None, None) => Err(CliError::Usage("give --alpha or --n".into())),
    }
}

fn domain(d: &DomainArgs, n: usize) -> CliResult<Domain<f64>> {
    let need = |what: &str| CliError::Usage(format!("--domain {:?} needs {what}", d.domain).to_lowercase());
    Ok(match d.domain {
        DomainKind::Unit => Domain::unit_box(n)?,
        DomainKind::Subbox => {
            let lo = d.lower.clone().ok_or_else(|| need("--lower"))?;
            let hi = d.upper.clone().ok_or_else(|| need("--upper"))?;
            if lo.len() != n || hi.len() != n {
                return Err(CliError::Usage(format!("--lower and --upper need {n} entries")));
            }
            Domain::sub_box(lo, hi)?
        }
        DomainKind::Ratio => Domain::ratio_box(n, d.r.ok_or_else(|| need("--r"))?)?,
        DomainKind::Sym => Domain::sym_box(n)?,
        DomainKind::Simplex => Domain::std_simplex(n)?,
        DomainKind::Corner => {
            let l = d.lambda.clone().ok_or_else(|| need("--lambda"))?;
            if l.len() != n {
                return Err(CliError::Usage(format!("--lambda needs {n} entries")));
            }
            Domain::corner_simplex_one(l)?
        }
        DomainKind::Complement => Domain::complement_simplex(n)?,
    })
}

fn spec(g: &Global, n: usize) -> GridSpec {
    let s = GridSpec::for_dim(n).with_seed(g.seed);
    match g.grid {
        Some(res) => s.with_resolution(res),
        None => s,
    }
}

fn diag(n: usize, t: f64) -> String {
    point(&vec![t; n])
}

fn cmd_bounds(g: &Global, mono: &MonomialArgs, d: &DomainArgs) -> CliResult<String> {
    format_or(g, Format::Table, &[Format::Table])?;
    let m = monomial(mono)?;
    let n = m.n();
    let dom = domain(d, n)?;
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut row = |name: &str, v: f64, at: String| rows.push(vec![name.to_string(), fixed6(v), at]);
    match &dom {
        Domain::RatioBox { r, .. } => {
            if !m.is_multilinear() {
                return Err(CliError::Usage("ratio-box bounds are for the multilinear monomial; use --n".into()));
            }
            let c = bounds::ratio_box_constants(n, *r)?;
            row("D (convex envelope error)", c.d, diag(n, c.d_point()));
            row("E (concave envelope error)", c.e, diag(n, c.e_point));
            row("relaxed convex error", c.relaxed, diag(n, c.relaxed_point));
            row("D/E", c.ratio(), "-".into());
            let cases = bounds::d_bound_cases(n, *r)?;
            row(&format!("D bound ({})", cases.case), cases.bound, "-".into());
        }
        Domain::SymBox { .. } => {
            if !m.is_multilinear() {
                return Err(CliError::Usage("symmetric-box bounds are for the multilinear monomial; use --n".into()));
            }
            let e = bounds::symbox_error::<f64>(n)?;
            let (x, w) = bounds::symbox_attainment::<f64>(n)?;
            row("hull error 1+((n-2)/n)^n", e, format!("x={} w={}", point(&x), fixed6(w)));
        }
        Domain::StdSimplex { .. } => {
            let (conc, cvx) = bounds::simplex_bounds::<f64>(&m)?;
            let dd = m.degree() as f64;
            let at: Vec<f64> = m.alpha().iter().map(|&a| a as f64 / dd).collect();
            row("concave error bound", conc, "-".into());
            row("convex envelope error", cvx, point(&at));
        }
        _ => {
            let b = monoconv::BoundSet::<f64>::for_monomial(&m)?;
            row("C1 (concave error)", b.c1, diag(n, b.concave_attainment()));
            let at = if m.is_multilinear() { diag(n, b.convex_attainment()) } else { "-".into() };
            row("C2 (convex error)", b.c2, at);
            if !matches!(dom, Domain::UnitBox { .. }) && dom.is_subset_of_unit_box() {
                if let Ok(gb) = bounds::gamma_bound_for(&m, &dom) {
                    row("gamma bound", gb, "-".into());
                }
            }
        }
    }
    Ok(format!("monomial {:?} on the {}\n{}", m.alpha(), dom.name(), table(&["quantity", "value", "attained at"], &rows)))
}

fn report_row(name: &str, r: &ErrorReport<f64>) -> Vec<String> {
    vec![
        name.to_string(),
        fixed6(r.bound_value),
        fixed6(r.measured_value),
        format!("{:.2e}", r.abs_gap),
        r.verdict.to_string(),
        r.argmax().map(point).unwrap_or_default(),
    ]
}

fn cmd_verify(g: &Global, case: Case, mono: &MonomialArgs, r: Option<f64>, trials: usize) -> CliResult<(String, bool)> {
    format_or(g, Format::Table, &[Format::Table])?;
    let header = ["check", "bound", "measured", "|diff|", "verdict", "argmax"];
    let mut reports: Vec<(String, ErrorReport<f64>)> = Vec::new();
    match case {
        Case::Integrality => {
            let n = mono.n.ok_or_else(|| CliError::Usage("integrality needs --n".into()))?;
            let rep = hulls::verify_integrality(n, trials, g.seed)?;
            let ok = rep.passed(1e-9);
            let text = format!(
                "integrality n={n} trials={trials} seed={}: max |constructive - LP| = {:.2e}, all +-1: {}, even parity: {}\n{}\n",
                g.seed,
                rep.max_abs_diff,
                rep.all_integral,
                rep.all_even,
                if ok { "PASS" } else { "FAIL" }
            );
            return Ok((text, ok));
        }
        Case::Unitbox => {
            let m = monomial(mono)?;
            let n = m.n();
            let dom = Domain::unit_box(n)?;
            let b = monoconv::BoundSet::<f64>::for_monomial(&m)?;
            let s = spec(g, n);
            reports.push(("concave min x_j vs C1".into(), oracle::max_gap(&m, &dom, &Estimator::ConcaveUnitBox, Side::Over, b.c1, g.tol, &s)?));
            if m.is_multilinear() {
                reports.push(("convex hinge vs C2".into(), oracle::max_gap(&m, &dom, &Estimator::ConvexUnitBox, Side::Under, b.c2, g.tol, &s)?));
            }
        }
        Case::Ratiobox => {
            let m = monomial(mono)?;
            let n = m.n();
            let r = r.ok_or_else(|| CliError::Usage("ratiobox needs --r".into()))?;
            let dom = Domain::ratio_box(n, r)?;
            let c = bounds::ratio_box_constants(n, r)?;
            let s = spec(g, n);
            reports.push(("convex envelope vs D".into(), oracle::max_gap(&m, &dom, &Estimator::ConvexRatioBox, Side::Under, c.d, g.tol, &s)?));
            reports.push(("concave envelope vs E".into(), oracle::max_gap(&m, &dom, &Estimator::ConcaveRatioBox, Side::Over, c.e, g.tol, &s)?));
            reports.push((
                "relaxed convex vs relaxed".into(),
                oracle::max_gap(&m, &dom, &Estimator::RelaxedConvexRatioBox, Side::Under, c.relaxed, g.tol, &s)?,
            ));
        }
        Case::Symbox => {
            let n = monomial(mono)?.n();
            reports.push(("hull error vs 1+((n-2)/n)^n".into(), hulls::symbox_hull_error(n, g.tol, &spec(g, n))?));
        }
        Case::Simplex => {
            let m = monomial(mono)?;
            let n = m.n();
            let dom = Domain::std_simplex(n)?;
            let (conc, cvx) = bounds::simplex_bounds::<f64>(&m)?;
            let s = spec(g, n);
            reports.push(("concave min x_j vs bound".into(), oracle::max_gap(&m, &dom, &Estimator::ConcaveUnitBox, Side::Over, conc, g.tol, &s)?));
            let best = oracle::maximize(|x: &[f64]| m.eval(x).unwrap_or(f64::NAN), &dom, &s)?;
            reports.push(("convex envelope (zero) vs bound".into(), ErrorReport::new(cvx, best.value, vec![best.point], g.tol)));
        }
    }
    let ok = reports.iter().all(|(_, r)| r.verdict != Verdict::Violated);
    let rows: Vec<Vec<String>> = reports.iter().map(|(name, r)| report_row(name, r)).collect();
    Ok((table(&header, &rows), ok))
}

fn cmd_figure1(g: &Global, n_min: usize, n_max: usize, rs: &[f64]) -> CliResult<()> {
    let f = format_or(g, Format::Csv, &[Format::Csv, Format::Table, Format::Svg])?;
    if n_min < 2 || n_max < n_min {
        return Err(CliError::Usage(format!("need 2 <= n-min <= n-max, got {n_min}..{n_max}")));
    }
    let ns: Vec<usize> = (n_min..=n_max).collect();
    let rows = bounds::figure1_table(&ns, rs)?;
    match f {
        Format::Csv => {
            let mut s = String::from("n,r,D,E,ratio,relaxed_ratio\n");
            for row in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    row.n,
                    sig9(row.r),
                    sig9(row.d),
                    sig9(row.e),
                    sig9(row.ratio),
                    sig9(row.relaxed_ratio)
                ));
            }
            emit(g, &s)
        }
        Format::Table => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|row| {
                    vec![row.n.to_string(), fixed6(row.r), fixed6(row.d), fixed6(row.e), fixed6(row.ratio), fixed6(row.relaxed_ratio)]
                })
                .collect();
            emit(g, &table(&["n", "r", "D", "E", "D/E", "relaxed/E"], &cells))
        }
        Format::Svg => {
            let prefix = g.out.clone().ok_or_else(|| CliError::Usage("--format svg needs --out as a file prefix".into()))?;
            let mut written = String::new();
            for &r in rs {
                let pts: Vec<(f64, f64)> = rows.iter().filter(|row| row.r == r).map(|row| (row.n as f64, row.ratio)).collect();
                let path = svg_path(&prefix, r);
                fs::write(&path, svg_line_chart(&format!("D/E over [1,{}]^n", sig9(r)), "n", "D/E", &pts))?;
                written.push_str(&format!("{}\n", path.display()));
            }
            print!("{written}");
            Ok(())
        }
    }
}

fn svg_path(prefix: &Path, r: f64) -> PathBuf {
    let stem = prefix.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "figure1".into());
    let tag = sig9(r).trim_end_matches('0').trim_end_matches('.').replace('.', "p");
    prefix.with_file_name(format!("{stem}_r{tag}.svg"))
}

fn cmd_facets(g: &Global, n: usize) -> CliResult<String> {
    let fs = FacetSystem::new(n)?;
    Ok(match format_or(g, Format::Table, &[Format::Table, Format::Csv])? {
        Format::Csv => fs.to_csv(),
        _ => fs.to_text(),
    })
}

fn read_polynomial(path: &Path) -> CliResult<Polynomial<f64>> {
    let text = fs::read_to_string(path)?;
    let json = path.extension().is_some_and(|e| e == "json") || text.trim_start().starts_with('{');
    Ok(if json { Polynomial::from_json(&text)? } else { Polynomial::parse_text(&text)? })
}

fn cmd_gap(g: &Global, path: &Path, certify: bool) -> CliResult<String> {
    format_or(g, Format::Table, &[Format::Table])?;
    let p = read_polynomial(path)?;
    let b = polyrelax::gap_bound(&p)?;
    let mut rows = vec![
        vec!["L'(p)".to_string(), fixed6(polyrelax::lprime(&p)?)],
        vec!["tight bound".into(), fixed6(b.tight)],
        vec!["cheap bound".into(), fixed6(b.cheap)],
        vec!["per-term sum (sharpened, not a textbook bound)".into(), fixed6(b.sharper)],
    ];
    if p.degree() >= 2 {
        rows.push(vec!["hierarchy threshold delta-hat".into(), fixed6(polyrelax::dklt_threshold::<f64>(p.n(), p.degree())?)]);
    }
    let mut out = format!("polynomial: n={} m={} terms={}\n", p.n(), p.degree(), p.terms().len());
    if certify {
        let dom = Domain::unit_box(p.n())?;
        let c = polyrelax::certify_gap_small_instance(&p, &dom, &spec(g, p.n()))?;
        rows.push(vec!["z* (min p)".into(), fixed6(c.z_star)]);
        rows.push(vec!["z_mon (min relaxation)".into(), fixed6(c.z_mon)]);
        rows.push(vec!["measured gap".into(), fixed6(c.gap)]);
        rows.push(vec!["gap within tight bound".into(), c.holds.to_string()]);
        out.push_str(&table(&["quantity", "value"], &rows));
        if !c.holds {
            emit(g, &out)?;
            return Err(CliError::Verification(format!("gap {} outside [0, {}]", c.gap, b.tight)));
        }
        return Ok(out);
    }
    out.push_str(&table(&["quantity", "value"], &rows));
    Ok(out)
}

fn cmd_sigma(g: &Global, mono: &MonomialArgs, beta: &[f64], d: &DomainArgs) -> CliResult<String> {
    format_or(g, Format::Table, &[Format::Table])?;
    let m = monomial(mono)?;
    let dom = domain(d, m.n())?;
    let closed = match bounds::sigma_beta(&m, &dom, beta)? {
        SigmaValue::Exact(v) => fixed6(v),
        SigmaValue::Interval { lo, hi, hi_open } => format!("[{}, {}{}", fixed6(lo), fixed6(hi), if hi_open { ")" } else { "]" }),
    };
    let mut rows = vec![vec!["closed form".to_string(), closed]];
    match oracle::sigma_numeric(&m, &dom, beta, &spec(g, m.n())) {
        Ok(v) => rows.push(vec!["numeric".into(), fixed6(v)]),
        Err(Error::ScaleExceeded { .. }) => rows.push(vec!["numeric".into(), "skipped (dimension too large)".into()]),
        Err(e) => return Err(e.into()),
    }
    Ok(format!("sigma(beta) for beta={beta:?} on the {}\n{}", dom.name(), table(&["source", "value"], &rows)))
}

fn cmd_root(l1: u32, l2: f64) -> CliResult<String> {
    Ok(match bounds::find_root_exp1(l1, l2)? {
        RootResult::NoRoot => format!("lambda2 >= lambda1: no root in (0, 1]\n"),
        RootResult::Root { sigma, lower, residual } => table(
            &["quantity", "value"],
            &[
                vec!["root".into(), sig9(sigma)],
                vec!["lower bound".into(), sig9(lower)],
                vec!["residual".into(), format!("{residual:.2e}")],
            ],
        ),
    })
}
