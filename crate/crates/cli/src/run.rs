use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use closure_core::corpus::{Corpus, DEFAULT_SEED};
use closure_core::error::Error;
use closure_core::homology::{
    eilenberg_steenrod_suite, largest_excisable, verify_comparison, verify_cover_subcomplex,
    verify_eilenberg_zilber, verify_excision, verify_kunneth, verify_les, verify_mayer_vietoris,
    verify_uct, ChainModel, Coefficients, HomologyGroup, Report, SingularComplex, Status,
};
use closure_core::homotopy::{
    are_homotopic, homotopy_classes, is_contractible, pi0, Budget, Search,
};
use closure_core::nerves::{Flavor, Interval, Limits, TheorySelector};
use closure_core::spaces::io::{read_cover, read_map, read_space, write_space};
use closure_core::spaces::{
    coproduct, inductive_product, power, product, pushout, quotient_by_subspace, standard_space,
    subspace, topological_modification, Cover, FiniteClosureSpace, PointSet, ProductKind,
    SpacePair, StandardKind,
};
use serde_json::{json, Value};
use thiserror::Error;

use crate::args::{BuildOp, Cli, Command, ConfigArgs, HomotopyQuery, Theorem, VerifyArgs};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;
pub const EXIT_REFUTED: u8 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_resource() => EXIT_RESOURCE,
            _ => EXIT_INPUT,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Validated options.
struct RunConfig {
    selector: TheorySelector,
    max_dim: usize,
    coeffs: Coefficients,
    limits: Limits,
    cap: usize,
    budget: Budget,
    seed: u64,
    out: Option<PathBuf>,
}

impl RunConfig {
    fn from_args(a: &ConfigArgs) -> CliResult<Self> {
        let interval = Interval::parse(&a.interval)?;
        let product = ProductKind::parse(&a.product)?;
        let flavor = Flavor::parse(&a.flavor)?;
        if a.cap == 0 || a.budget == 0 {
            return Err(Error::InvalidInput("--cap and --budget must be positive".into()).into());
        }
        Ok(RunConfig {
            selector: TheorySelector::new(interval, product, flavor)?,
            max_dim: a.max_dim,
            coeffs: Coefficients::parse(&a.coeff)?,
            limits: Limits {
                max_cells: a.cap,
                max_dim: a.max_dim + 1,
            },
            cap: a.cap,
            budget: Budget {
                max_maps: a.budget,
                max_steps: usize::MAX,
            },
            seed: a.seed.unwrap_or(DEFAULT_SEED),
            out: a.out.clone(),
        })
    }

    fn emit(&self, text: &str) -> CliResult<()> {
        match &self.out {
            None => {
                let mut out = std::io::stdout().lock();
                match writeln!(out, "{text}") {
                    Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io {
                        path: PathBuf::from("<stdout>"),
                        source: e,
                    }),
                    _ => Ok(()),
                }
            }
            Some(p) => fs::write(p, format!("{text}\n")).map_err(|source| CliError::Io {
                path: p.clone(),
                source,
            }),
        }
    }
}

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// A space file path, or `std:<kind>:<m>[:<k>]` for a standard space.
fn load_space(space_arg: &str) -> CliResult<Arc<FiniteClosureSpace>> {
    if let Some(rest) = space_arg.strip_prefix("std:") {
        let parts: Vec<&str> = rest.split(':').collect();
        let number = |s: Option<&&str>| -> CliResult<u64> {
            match s {
                None => Ok(0),
                Some(t) => t.parse().map_err(|_| {
                    Error::InvalidInput(format!("bad number `{t}` in `{space_arg}`")).into()
                }),
            }
        };
        let kind = StandardKind::parse(parts[0])?;
        let m = number(parts.get(1))? as usize;
        let k = number(parts.get(2))?;
        return Ok(Arc::new(standard_space(kind, m, k)?));
    }
    let text = read_text(Path::new(space_arg))?;
    read_space(&text)
        .map(Arc::new)
        .map_err(|e| match e {
            Error::InvalidInput(m) => Error::InvalidInput(format!("{space_arg}: {m}")),
            other => other,
        })
        .map_err(Into::into)
}

fn parse_points(space: &FiniteClosureSpace, list: &str) -> CliResult<PointSet> {
    let labels: Vec<&str> = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    Ok(space.subset(&labels)?)
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values serialize")
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

pub fn run(cli: Cli) -> CliResult<u8> {
    let cfg = RunConfig::from_args(&cli.config)?;
    match cli.command {
        Command::Validate { space } => validate(&cfg, &space),
        Command::Build { op } => build(&cfg, op),
        Command::Homology { space, cohomology } => homology(&cfg, &space, cohomology),
        Command::Pi0 { space } => {
            let x = load_space(&space)?;
            let classes: Vec<Vec<String>> = pi0(&x, cfg.selector.interval)
                .into_iter()
                .map(|c| x.subset_labels(c))
                .collect();
            cfg.emit(&pretty(&json!({
                "interval": cfg.selector.interval.name(),
                "count": classes.len(),
                "classes": classes,
            })))?;
            Ok(EXIT_OK)
        }
        Command::Homotopy { query } => homotopy(&cfg, query),
        Command::Verify(args) => verify(&cfg, args),
    }
}

fn validate(cfg: &RunConfig, space_arg: &str) -> CliResult<u8> {
    let x = load_space(space_arg)?;
    cfg.emit(&pretty(&json!({
        "ok": true,
        "points": x.len(),
        "topological": x.is_topological(),
    })))?;
    Ok(EXIT_OK)
}

fn build(cfg: &RunConfig, op: BuildOp) -> CliResult<u8> {
    let space: FiniteClosureSpace = match op {
        BuildOp::Product { a, b } => product(&*load_space(&a)?, &*load_space(&b)?)?,
        BuildOp::InductiveProduct { a, b } => {
            inductive_product(&*load_space(&a)?, &*load_space(&b)?)?
        }
        BuildOp::Coproduct { a, b } => {
            let (s, _, _) = coproduct(&load_space(&a)?, &load_space(&b)?)?;
            (*s).clone()
        }
        BuildOp::Pushout { a, b, c, f, g } => {
            let (a, b, c) = (load_space(&a)?, load_space(&b)?, load_space(&c)?);
            let f = read_map(a.clone(), b, &read_text(&f)?)?;
            let g = read_map(a, c, &read_text(&g)?)?;
            let (s, _, _) = pushout(&f, &g)?;
            (*s).clone()
        }
        BuildOp::Quotient { space, points } => {
            let x = load_space(&space)?;
            let a = parse_points(&x, &points)?;
            let (s, _) = quotient_by_subspace(&x, a)?;
            (*s).clone()
        }
        BuildOp::Subspace { space, points } => {
            let x = load_space(&space)?;
            let a = parse_points(&x, &points)?;
            subspace(&x, a)?.0
        }
        BuildOp::Tau { space } => topological_modification(&*load_space(&space)?),
        BuildOp::Power { kind, space, n } => {
            power(&*load_space(&space)?, n, ProductKind::parse(&kind)?)?
        }
    };
    cfg.emit(&write_space(&space))?;
    Ok(EXIT_OK)
}

fn group_json(n: usize, g: &HomologyGroup) -> Value {
    json!({ "n": n, "betti": g.betti, "torsion": g.torsion })
}

/// Reduced groups differ from unreduced ones only by a free summand in
/// degree zero of a non-empty space.
fn reduced(groups: &[HomologyGroup], nonempty: bool) -> Vec<HomologyGroup> {
    let mut out = groups.to_vec();
    if let Some(h0) = out.first_mut() {
        if nonempty {
            h0.betti -= 1;
        }
    }
    out
}

fn homology(cfg: &RunConfig, space_arg: &str, cohomology: bool) -> CliResult<u8> {
    let x = load_space(space_arg)?;
    let c = SingularComplex::build(
        x.clone(),
        cfg.selector,
        cfg.max_dim,
        ChainModel::Normalized,
        cfg.limits,
    )?;
    let h = c.complex().homology_all(cfg.coeffs);
    let list = |gs: &[HomologyGroup]| -> Vec<Value> {
        gs.iter()
            .enumerate()
            .map(|(n, g)| group_json(n, g))
            .collect()
    };
    let mut report = json!({
        "selector": cfg.selector.to_string(),
        "coefficients": cfg.coeffs.to_string(),
        "homology": list(&h),
        "reduced": list(&reduced(&h, !x.is_empty())),
    });
    if cohomology {
        let hc = c.complex().cohomology_all(cfg.coeffs);
        report["cohomology"] = json!(list(&hc));
    }
    cfg.emit(&pretty(&report))?;
    Ok(EXIT_OK)
}

fn search_report<T>(s: Search<T>, witness: impl FnOnce(T) -> Value) -> (Value, u8) {
    let status = s.status();
    match s {
        Search::Found(w) => (json!({ "status": status, "witness": witness(w) }), EXIT_OK),
        Search::Absent => (json!({ "status": status }), EXIT_OK),
        Search::Inconclusive { explored } => (
            json!({ "status": status, "explored": explored }),
            EXIT_RESOURCE,
        ),
    }
}

fn homotopy(cfg: &RunConfig, query: HomotopyQuery) -> CliResult<u8> {
    let (j, p) = (cfg.selector.interval, cfg.selector.product);
    let (report, code) = match query {
        HomotopyQuery::Contractible { space } => {
            let x = load_space(&space)?;
            search_report(is_contractible(&x, j, p, cfg.budget)?, |w| w.to_json())
        }
        HomotopyQuery::Maps {
            source,
            target,
            f,
            g,
        } => {
            let (x, y) = (load_space(&source)?, load_space(&target)?);
            let f = read_map(x.clone(), y.clone(), &read_text(&f)?)?;
            let g = read_map(x, y, &read_text(&g)?)?;
            search_report(are_homotopic(&f, &g, j, p, cfg.budget)?, |w| w.to_json())
        }
        HomotopyQuery::Classes { source, target } => {
            let (x, y) = (load_space(&source)?, load_space(&target)?);
            let classes = homotopy_classes(&x, &y, j, p, cfg.cap)?;
            let rendered: Vec<Vec<Vec<String>>> = classes
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|m| {
                            m.assignment()
                                .iter()
                                .map(|&v| y.label(v).to_string())
                                .collect()
                        })
                        .collect()
                })
                .collect();
            (
                json!({ "count": classes.len(), "classes": rendered }),
                EXIT_OK,
            )
        }
    };
    let mut report = report;
    report["interval"] = json!(j.name());
    report["product"] = json!(p.name());
    cfg.emit(&pretty(&report))?;
    Ok(code)
}

fn verify(cfg: &RunConfig, args: VerifyArgs) -> CliResult<u8> {
    let reports = if args.spaces.is_empty() {
        verify_random(cfg, &args)?
    } else {
        vec![verify_given(cfg, &args)?]
    };
    let lines: Vec<String> = reports
        .iter()
        .map(|r| compact(&serde_json::to_value(r).expect("reports serialize")))
        .collect();
    cfg.emit(&lines.join("\n"))?;
    let refuted = reports.iter().any(|r| r.status == Status::Refuted);
    Ok(if refuted { EXIT_REFUTED } else { EXIT_OK })
}

fn require<'a>(value: &'a Option<String>, flag: &str) -> CliResult<&'a str> {
    value
        .as_deref()
        .ok_or_else(|| Error::InvalidInput(format!("this theorem needs --{flag}")).into())
}

fn second_space(args: &VerifyArgs) -> CliResult<Arc<FiniteClosureSpace>> {
    match args.spaces.get(1) {
        Some(s) => load_space(s),
        None => Err(Error::InvalidInput("this theorem needs two spaces".into()).into()),
    }
}

fn load_cover(space: &Arc<FiniteClosureSpace>, path: &Option<PathBuf>) -> CliResult<Cover> {
    let path = path
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("this theorem needs --cover".into()))?;
    Ok(read_cover(space.clone(), &read_text(path)?)?)
}

fn verify_given(cfg: &RunConfig, args: &VerifyArgs) -> CliResult<Report> {
    let x = load_space(&args.spaces[0])?;
    let (sel, d, lim) = (cfg.selector, cfg.max_dim, cfg.limits);
    let name = args.spaces.join(" ");
    let report = match args.theorem {
        Theorem::Mv => {
            let cover = load_cover(&x, &args.cover)?;
            let [a, b] = cover.parts() else {
                return Err(
                    Error::InvalidInput("Mayer-Vietoris needs a two-part cover".into()).into(),
                );
            };
            verify_mayer_vietoris(&x, *a, *b, sel, d, lim, &name)?
        }
        Theorem::Excision => {
            let a = parse_points(&x, require(&args.a, "a")?)?;
            let z = match &args.z {
                Some(z) => parse_points(&x, z)?,
                None => largest_excisable(&x, a),
            };
            verify_excision(&x, a, z, sel, d, lim, &name)?
        }
        Theorem::Les => {
            let pair = SpacePair::new(x.clone(), parse_points(&x, require(&args.a, "a")?)?)?;
            verify_les(&pair, sel, d, lim, &name)?
        }
        Theorem::Kunneth => {
            verify_kunneth(&x, &second_space(args)?, sel, cfg.coeffs, d, lim, &name)?
        }
        Theorem::Ez => verify_eilenberg_zilber(&x, &second_space(args)?, sel, d, lim, &name)?,
        Theorem::Uct => verify_uct(&x, sel, cfg.coeffs, d, lim, &name)?,
        Theorem::Comparison => verify_comparison(&x, sel.interval, d, lim, &name)?,
        Theorem::CoverSubcomplex => {
            verify_cover_subcomplex(&load_cover(&x, &args.cover)?, sel, d, lim, &name)?
        }
        Theorem::EsAxioms => {
            let a = match &args.a {
                Some(a) => parse_points(&x, a)?,
                None => PointSet::EMPTY,
            };
            let pair = SpacePair::new(x.clone(), a)?;
            eilenberg_steenrod_suite(sel, &[pair], d, lim, cfg.cap)?
        }
    };
    Ok(report)
}

fn verify_random(cfg: &RunConfig, args: &VerifyArgs) -> CliResult<Vec<Report>> {
    let mut corpus = Corpus::new(cfg.seed);
    let (sel, d, lim) = (cfg.selector, cfg.max_dim, cfg.limits);
    let n = args.points.max(1);
    if args.theorem == Theorem::EsAxioms {
        let pairs: Vec<SpacePair> = (0..args.random)
            .map(|_| {
                let x = Arc::new(corpus.space(n));
                corpus.pair(&x)
            })
            .collect();
        return Ok(vec![eilenberg_steenrod_suite(
            sel, &pairs, d, lim, cfg.cap,
        )?]);
    }
    let mut out = Vec::with_capacity(args.random);
    for i in 0..args.random {
        let name = format!("random #{i} (seed {})", cfg.seed);
        let report = corpus.retry(32, |c| {
            let x = Arc::new(c.space(n));
            match args.theorem {
                Theorem::Mv => {
                    let (a, b) = c.interior_pair(&x);
                    verify_mayer_vietoris(&x, a, b, sel, d, lim, &name)
                }
                Theorem::Excision => {
                    let (a, z) = c.excision_triple(&x);
                    verify_excision(&x, a, z, sel, d, lim, &name)
                }
                Theorem::Les => verify_les(&c.pair(&x), sel, d, lim, &name),
                Theorem::Kunneth | Theorem::Ez => {
                    let small = n.min(3);
                    let x = Arc::new(c.space(small));
                    let y = Arc::new(c.space(small));
                    if args.theorem == Theorem::Kunneth {
                        verify_kunneth(&x, &y, sel, cfg.coeffs, d, lim, &name)
                    } else {
                        verify_eilenberg_zilber(&x, &y, sel, d, lim, &name)
                    }
                }
                Theorem::Uct => verify_uct(&x, sel, cfg.coeffs, d, lim, &name),
                Theorem::Comparison => verify_comparison(&x, sel.interval, d, lim, &name),
                Theorem::CoverSubcomplex => {
                    verify_cover_subcomplex(&c.interior_cover(&x, 3), sel, d, lim, &name)
                }
                Theorem::EsAxioms => unreachable!("handled above"),
            }
        })?;
        out.push(report);
    }
    Ok(out)
}
