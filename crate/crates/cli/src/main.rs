//! Command-line front end: thin, stateless wrappers over the library
//! operations, with "p/q" rationals everywhere and JSON output on demand.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use kustab::charge::{central_charge, ChargeSpec};
use kustab::chern::{euler, NumChern};
use kustab::exact::{format_rational, parse_rational, Rational};
use kustab::figures::{render, FigureKind, FigureSpec, RatWindow};
use kustab::kulattice::{
    basis_vectors, coords_are_integral, ell_max_attained, ku_basis, lattice_coords, mutate_o,
    mutate_u,
};
use kustab::orbit::{same_orbit_check, serre_certificate};
use kustab::tiltplane::{
    mu_window, region_test_detail, slope, wall_endpoints, PlanePoint, RegionId, Slope,
    StabilityParam,
};
use kustab::variety::{catalog, ObjectName, VarietyConfig, VarietyParams};

const SCHEMA: &str = "1";

#[derive(Parser)]
#[command(
    name = "kustab",
    version,
    about = "Exact tilt-stability computations on rank-2 Kuznetsov lattices"
)]
struct Cli {
    /// Even genus of the ambient threefold (6 to 12)
    #[arg(long, global = true, default_value_t = 6)]
    genus: i64,
    /// JSON config file ({"genus": ..., "todd": [...], "e2_ch3": ...})
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Emit JSON instead of plain text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Euler pairing of two classes
    Chi {
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
    },
    /// Resolve a class reference and print it as a JSON class object
    Class {
        #[arg(long)]
        name: String,
    },
    /// Tilt slope of a class at (s, q)
    Slope {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        /// Apply a homological shift to the class first
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        shift: i64,
    },
    /// Region membership at (s, q), with the slope window when inside
    Region {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long)]
        region: u8,
    },
    /// Slope window [lo, hi) of a region at (s, q)
    Window {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long)]
        region: u8,
    },
    /// Intersections with the parabola of the line through (s, q) and a class
    Wall {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, allow_hyphen_values = true)]
        class: String,
    },
    /// Central charge of a class, in either parametrization
    Charge {
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        alpha_sq: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        /// Rotate by the conjugate of the tilting unit at this slope
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
    },
    /// Left mutation of a class (functor LO or LU)
    Mutate {
        #[arg(long)]
        functor: String,
        #[arg(long, allow_hyphen_values = true)]
        class: String,
    },
    /// Coordinates of a class in a lattice basis (1, 2 or 3)
    Coords {
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        #[arg(long)]
        lattice: u8,
    },
    /// Maximum self-pairing over the coordinate box of the index-1 lattice
    Ell {
        #[arg(long, default_value_t = 50)]
        radius: u32,
    },
    /// Serre-invariance certificate for a (p3, p2, p1) parameter triple
    SerreCheck {
        /// Region-3 point as "s,q"
        #[arg(long, allow_hyphen_values = true)]
        p3: String,
        /// Region-2 point as "s,q"
        #[arg(long, allow_hyphen_values = true)]
        p2: String,
        /// Region-1 point as "s,q"
        #[arg(long, allow_hyphen_values = true)]
        p1: String,
    },
    /// Transform relating the charges of two parameters of one region
    OrbitSolve {
        #[arg(long, allow_hyphen_values = true)]
        pa: String,
        #[arg(long, allow_hyphen_values = true)]
        pb: String,
        #[arg(long)]
        region: u8,
    },
    /// Render a figure to an SVG file
    Figure {
        /// One of li_boundary, regions, wall, slope_compare
        #[arg(long)]
        kind: String,
        #[arg(long)]
        out: PathBuf,
        /// Window as "smin,smax,qmin,qmax" (defaults depend on the kind)
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long, default_value_t = 800)]
        width: u32,
        #[arg(long, default_value_t = 600)]
        height: u32,
        /// Anchor point for wall / slope_compare figures
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        /// Class (repeatable for slope_compare)
        #[arg(long, allow_hyphen_values = true)]
        class: Vec<String>,
    },
}

enum Failure {
    Domain(kustab::Error),
    Usage(String),
}

impl From<kustab::Error> for Failure {
    fn from(e: kustab::Error) -> Self {
        Failure::Domain(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load_variety(cli: &Cli) -> Result<VarietyParams, Failure> {
    if let Some(path) = &cli.config {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
        let cfg: VarietyConfig = serde_json::from_str(&text)
            .map_err(|e| Failure::Usage(format!("bad config {}: {e}", path.display())))?;
        return Ok(VarietyParams::from_config(&cfg)?);
    }
    Ok(VarietyParams::make(cli.genus)?)
}

/// Resolves `@name` catalog/basis references or inline JSON class objects.
fn resolve_class(spec: &str, var: &VarietyParams) -> Result<NumChern, Failure> {
    let t = spec.trim();
    if t.starts_with('{') {
        return serde_json::from_str::<NumChern>(t)
            .map_err(|e| Failure::Usage(format!("bad class JSON: {e}")));
    }
    let name = t.strip_prefix('@').unwrap_or(t);
    let class = match name {
        "b1" => basis_vectors(RegionId::One, var)?.0,
        "b2" => basis_vectors(RegionId::One, var)?.1,
        "c1" => basis_vectors(RegionId::Two, var)?.0,
        "c2" => basis_vectors(RegionId::Two, var)?.1,
        "d1" => basis_vectors(RegionId::Three, var)?.0,
        "d2" => basis_vectors(RegionId::Three, var)?.1,
        _ => catalog(var, &ObjectName::parse(name)?)?,
    };
    Ok(class)
}

fn parse_rat(s: &str, what: &str) -> Result<Rational, Failure> {
    parse_rational(s).map_err(|_| Failure::Usage(format!("{what}: expected a rational, got `{s}`")))
}

fn parse_point(s: &str, what: &str) -> Result<PlanePoint, Failure> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Failure::Usage(format!("{what}: expected \"s,q\", got `{s}`")))?;
    Ok(PlanePoint::new(parse_rat(a, what)?, parse_rat(b, what)?))
}

fn parse_region(i: u8) -> Result<RegionId, Failure> {
    RegionId::from_index(i).map_err(|e| Failure::Usage(e.to_string()))
}

fn slope_string(s: &Slope) -> String {
    match s {
        Slope::Finite(r) => format_rational(r),
        Slope::Infinite => "inf".to_string(),
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let var = load_variety(&cli)?;
    match &cli.command {
        Command::Chi { left, right } => {
            let l = resolve_class(left, &var)?;
            let r = resolve_class(right, &var)?;
            let chi = euler(&l, &r, &var)?;
            if cli.json {
                println!(
                    "{}",
                    json!({"schema": SCHEMA, "chi": format_rational(&chi)})
                );
            } else {
                println!("{}", format_rational(&chi));
            }
        }
        Command::Class { name } => {
            let class = resolve_class(name, &var)?;
            println!(
                "{}",
                serde_json::to_string(&class).expect("class serializes")
            );
        }
        Command::Slope { s, q, class, shift } => {
            let p = PlanePoint::new(parse_rat(s, "--s")?, parse_rat(q, "--q")?);
            let v = resolve_class(class, &var)?.shift(*shift);
            let mu = slope(&p, &v)?;
            if cli.json {
                println!("{}", json!({"schema": SCHEMA, "slope": slope_string(&mu)}));
            } else {
                println!("{}", slope_string(&mu));
            }
        }
        Command::Region { s, q, region } => {
            let p = PlanePoint::new(parse_rat(s, "--s")?, parse_rat(q, "--q")?);
            let r = parse_region(*region)?;
            region_test_detail(&p, r, &var)?;
            let (lo, hi) = mu_window(&p, r, &var)?;
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "schema": SCHEMA,
                        "in_region": true,
                        "window": [format_rational(&lo), format_rational(&hi)],
                    })
                );
            } else {
                println!(
                    "in region {}: window [{}, {})",
                    r,
                    format_rational(&lo),
                    format_rational(&hi)
                );
            }
        }
        Command::Window { s, q, region } => {
            let p = PlanePoint::new(parse_rat(s, "--s")?, parse_rat(q, "--q")?);
            let r = parse_region(*region)?;
            let (lo, hi) = mu_window(&p, r, &var)?;
            if cli.json {
                println!(
                    "{}",
                    json!({"schema": SCHEMA, "window": [format_rational(&lo), format_rational(&hi)]})
                );
            } else {
                println!("[{}, {})", format_rational(&lo), format_rational(&hi));
            }
        }
        Command::Wall { s, q, class } => {
            let p = PlanePoint::new(parse_rat(s, "--s")?, parse_rat(q, "--q")?);
            let v = resolve_class(class, &var)?;
            let (bminus, bplus) = wall_endpoints(&p, &v)?;
            if cli.json {
                println!(
                    "{}",
                    json!({"schema": SCHEMA, "bminus": bminus, "bplus": bplus})
                );
            } else {
                println!("B- = {bminus}");
                println!("B+ = {bplus}");
            }
        }
        Command::Charge {
            s,
            q,
            beta,
            alpha_sq,
            class,
            mu,
        } => {
            let spec = match (s, q, beta, alpha_sq) {
                (Some(s), Some(q), None, None) => {
                    ChargeSpec::sq(PlanePoint::new(parse_rat(s, "--s")?, parse_rat(q, "--q")?))
                }
                (None, None, Some(b), Some(a2)) => {
                    ChargeSpec::ab(parse_rat(b, "--beta")?, parse_rat(a2, "--alpha-sq")?)?
                }
                _ => {
                    return Err(Failure::Usage(
                        "pass either --s and --q, or --beta and --alpha-sq".into(),
                    ))
                }
            };
            let spec = match mu {
                Some(m) => spec.with_rotation(parse_rat(m, "--mu")?),
                None => spec,
            };
            let v = resolve_class(class, &var)?;
            let z = central_charge(&spec, &v, &var);
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "schema": SCHEMA,
                        "re": format_rational(&z.re),
                        "im": format_rational(&z.im),
                    })
                );
            } else {
                println!("{z}");
            }
        }
        Command::Mutate { functor, class } => {
            let v = resolve_class(class, &var)?;
            let image = match functor.to_ascii_uppercase().as_str() {
                "LO" => mutate_o(&v, &var)?,
                "LU" => mutate_u(&v, &var)?,
                other => {
                    return Err(Failure::Usage(format!(
                        "unknown functor `{other}`: expected LO or LU"
                    )))
                }
            };
            println!(
                "{}",
                serde_json::to_string(&image).expect("class serializes")
            );
        }
        Command::Coords { class, lattice } => {
            let v = resolve_class(class, &var)?;
            let r = parse_region(*lattice)?;
            let ku = ku_basis(r, &var)?;
            let coords = lattice_coords(&v, &ku)?;
            let integral = coords_are_integral(&coords);
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "schema": SCHEMA,
                        "a": format_rational(&coords.0),
                        "b": format_rational(&coords.1),
                        "integral": integral,
                    })
                );
            } else {
                println!(
                    "({}, {}){}",
                    format_rational(&coords.0),
                    format_rational(&coords.1),
                    if integral { " integral" } else { "" }
                );
            }
        }
        Command::Ell { radius } => {
            let ku = ku_basis(RegionId::One, &var)?;
            let (value, witnesses) = ell_max_attained(&ku, *radius);
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "schema": SCHEMA,
                        "ell": format_rational(&value),
                        "radius": radius,
                        "attained": witnesses,
                    })
                );
            } else {
                let w: Vec<String> = witnesses
                    .iter()
                    .map(|(a, b)| format!("({a}, {b})"))
                    .collect();
                println!("{} attained at {}", format_rational(&value), w.join(" "));
            }
        }
        Command::SerreCheck { p3, p2, p1 } => {
            let p3 = StabilityParam::new(parse_point(p3, "--p3")?);
            let p2 = StabilityParam::new(parse_point(p2, "--p2")?);
            let p1 = StabilityParam::new(parse_point(p1, "--p1")?);
            let cert = serre_certificate(&p3, &p2, &p1, &var)?;
            if cli.json {
                let mut value = serde_json::to_value(&cert).expect("certificate serializes");
                value["schema"] = json!(SCHEMA);
                println!("{value}");
            } else {
                for step in &cert.steps {
                    println!(
                        "{}: det = {}",
                        step.description,
                        format_rational(step.transform.det())
                    );
                }
                println!("composite det = {}", format_rational(cert.composite.det()));
                println!("lattice fixed: {}", cert.lattice_fixed);
                println!(
                    "certificate: {}",
                    if cert.passes() { "PASS" } else { "FAIL" }
                );
            }
            return Ok(if cert.passes() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            });
        }
        Command::OrbitSolve { pa, pb, region } => {
            let r = parse_region(*region)?;
            let pa = StabilityParam::new(parse_point(pa, "--pa")?);
            let pb = StabilityParam::new(parse_point(pb, "--pb")?);
            let m = same_orbit_check(&pa, &pb, r, &var)?;
            if cli.json {
                let mut value = serde_json::to_value(&m).expect("transform serializes");
                value["schema"] = json!(SCHEMA);
                println!("{value}");
            } else {
                println!("M = {}", m.matrix());
                println!("det = {}", format_rational(m.det()));
            }
        }
        Command::Figure {
            kind,
            out,
            window,
            width,
            height,
            s,
            q,
            class,
        } => {
            let anchor = || -> Result<PlanePoint, Failure> {
                match (s, q) {
                    (Some(s), Some(q)) => {
                        Ok(PlanePoint::new(parse_rat(s, "--s")?, parse_rat(q, "--q")?))
                    }
                    _ => Err(Failure::Usage(format!(
                        "figure kind `{kind}` needs --s and --q"
                    ))),
                }
            };
            let classes = || -> Result<Vec<NumChern>, Failure> {
                if class.is_empty() {
                    return Err(Failure::Usage(format!(
                        "figure kind `{kind}` needs at least one --class"
                    )));
                }
                class.iter().map(|c| resolve_class(c, &var)).collect()
            };
            let (figure_kind, default_window) = match kind.as_str() {
                "li_boundary" => (FigureKind::LiBoundary, ("-3", "3", "-1", "5")),
                "regions" => (FigureKind::Regions, ("-3/2", "1", "-1/4", "3/4")),
                "wall" => (
                    FigureKind::Wall { p: anchor()?, class: classes()?.remove(0) },
                    ("-1/2", "3/2", "-1/4", "5/4"),
                ),
                "slope_compare" => (
                    FigureKind::SlopeCompare { p: anchor()?, classes: classes()? },
                    ("-2", "1", "-1/2", "3/2"),
                ),
                other => {
                    return Err(Failure::Usage(format!(
                        "unknown figure kind `{other}`: expected li_boundary, regions, wall or slope_compare"
                    )))
                }
            };
            let window = match window {
                Some(w) => {
                    let parts: Vec<&str> = w.split(',').collect();
                    if parts.len() != 4 {
                        return Err(Failure::Usage(
                            "--window expects \"smin,smax,qmin,qmax\"".into(),
                        ));
                    }
                    RatWindow::new(
                        parse_rat(parts[0], "--window")?,
                        parse_rat(parts[1], "--window")?,
                        parse_rat(parts[2], "--window")?,
                        parse_rat(parts[3], "--window")?,
                    )
                }
                None => RatWindow::new(
                    parse_rat(default_window.0, "window")?,
                    parse_rat(default_window.1, "window")?,
                    parse_rat(default_window.2, "window")?,
                    parse_rat(default_window.3, "window")?,
                ),
            };
            let spec = FigureSpec {
                kind: figure_kind,
                window,
                width_px: *width,
                height_px: *height,
            };
            let svg = render(&spec, &var)?;
            fs::write(out, svg)
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", out.display())))?;
            println!("wrote {}", out.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}
