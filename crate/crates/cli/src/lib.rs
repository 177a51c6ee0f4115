//! Command-line front end for `immaculate-core`.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use immaculate_core::cohomology::{
    cohomology_fan_side, cohomology_polytope_side, is_immaculate_over, GradedCohomology,
};
use immaculate_core::exceptional::{
    box_region, find_exceptional_sequences, orbit_classes, projected_cube, SequenceQuery,
};
use immaculate_core::families::{
    build_pic2, build_pic3, build_splitting, pic2_immaculate, pic3_candidates,
    pic3_immaculate_closed_form, splitting_immaculate_general, PicThreeData, PicTwoData,
    SplittingData,
};
use immaculate_core::fan::{indices_of, Fan, ToricDivisor};
use immaculate_core::homology::Field;
use immaculate_core::locus::{
    cube_analysis, immaculate_locus_in_order, is_really_immaculate, tempting_subsets_over,
    LocusDescription, LocusPiece,
};

pub mod output;

use output::{json_ints, Cell, Format, Int, Output, Table};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Domain(#[from] immaculate_core::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 1 for I/O failures, 2 for everything the input is to blame for.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 1,
            _ => 2,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "immaculate",
    version,
    about = "Cohomology and immaculate line bundles on toric varieties"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "pretty")]
    pub format: Format,
    /// Coefficients for homology: `q` or `gf:p` with p prime.
    #[arg(long, global = true, default_value = "q", value_parser = parse_field)]
    pub field: Field,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct FanArg {
    /// Fan in JSON: `{"rays": ..., "maximal_cones": ..., "pi": ...}`.
    #[arg(long)]
    pub fan: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Method {
    Both,
    Fan,
    Polytope,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Region {
    Cube,
    Box(i64),
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the fan and report its properties.
    Validate(FanArg),
    /// Cohomology of a torus-invariant divisor.
    Cohomology {
        #[command(flatten)]
        fan: FanArg,
        /// Coefficients over the rays. A vector with one entry per class
        /// coordinate is read as a class.
        #[arg(
            long,
            allow_hyphen_values = true,
            value_delimiter = ',',
            conflicts_with = "class"
        )]
        divisor: Option<Vec<BigInt>>,
        /// Coordinates in the class group.
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        class: Option<Vec<BigInt>>,
        #[arg(long, value_enum, default_value = "both")]
        method: Method,
        /// Also list every degree with nonzero cohomology.
        #[arg(long)]
        degrees: bool,
    },
    /// Tempting subsets of rays.
    Tempting(FanArg),
    /// Lattice lines and isolated points of the immaculate locus.
    ImmaculateLocus(FanArg),
    /// Whether a class is immaculate, and whether it avoids every maculate region.
    ReallyImmaculate {
        #[command(flatten)]
        fan: FanArg,
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        class: Vec<BigInt>,
    },
    /// Image of the cube `[-1, 0]^n` in the class group.
    Cube(FanArg),
    /// Closed forms for the built-in families.
    #[command(subcommand)]
    Family(Family),
    /// Exceptional sequences of line bundles with `L_0 = 0`.
    Exceptional {
        #[command(flatten)]
        fan: FanArg,
        #[arg(long)]
        length: usize,
        /// `cube` for the image of `[0, 1]^n`, or `box:R` for `[-R, R]^r`.
        #[arg(long, default_value = "cube", value_parser = parse_region)]
        region: Region,
        /// Group the sequences into orbits under the fan automorphisms.
        #[arg(long)]
        orbits: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum Family {
    /// Picard rank two: class map `[[1..1, c], [0..0, 1..1]]`.
    Pic2 {
        #[arg(long)]
        l1: usize,
        #[arg(long)]
        l2: usize,
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        c: Vec<i64>,
        #[command(flatten)]
        common: FamilyCommon,
    },
    /// Iterated projective bundles; parameters as JSON `{"l": [...], "c": [[[...]]]}`.
    Splitting {
        #[arg(long)]
        params: PathBuf,
        #[command(flatten)]
        common: FamilyCommon,
    },
    /// Picard rank three with five blocks `J_0, ..., J_4`.
    Pic3 {
        #[arg(long, value_delimiter = ',')]
        p: Vec<usize>,
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        c: Vec<i64>,
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        b: Vec<i64>,
        #[command(flatten)]
        common: FamilyCommon,
    },
}

#[derive(Debug, Args)]
pub struct FamilyCommon {
    /// Decide a single class instead of describing the locus.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    pub class: Option<Vec<BigInt>>,
    /// Half-width of the box listed for picard rank two.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(i64).range(1..))]
    pub radius: i64,
    /// Print the fan as JSON instead.
    #[arg(long)]
    pub emit_fan: bool,
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

fn parse_field(s: &str) -> Result<Field, String> {
    match s.to_ascii_lowercase().as_str() {
        "q" => Ok(Field::Rational),
        other => match other.strip_prefix("gf:").map(str::parse::<u64>) {
            Some(Ok(p)) if is_prime(p) => Ok(Field::Prime(p)),
            Some(Ok(p)) => Err(format!("{p} is not prime")),
            _ => Err("expected `q` or `gf:p`".into()),
        },
    }
}

fn parse_region(s: &str) -> Result<Region, String> {
    if s == "cube" {
        return Ok(Region::Cube);
    }
    match s.strip_prefix("box:").map(str::parse::<i64>) {
        Some(Ok(r)) if r >= 1 => Ok(Region::Box(r)),
        Some(Ok(_)) => Err("box radius must be at least 1".into()),
        _ => Err("expected `cube` or `box:R`".into()),
    }
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_fan(arg: &FanArg) -> CliResult<Fan> {
    Ok(Fan::from_json(&read(&arg.fan)?)?)
}

fn field_name(f: Field) -> String {
    match f {
        Field::Rational => "q".into(),
        Field::Prime(p) => format!("gf:{p}"),
    }
}

fn yes_no(b: bool) -> Cell {
    Cell::Text(if b { "yes" } else { "no" }.into())
}

fn rays_cell(mask: u64) -> Cell {
    Cell::Text(
        indices_of(mask)
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(","),
    )
}

fn validate(fan: &Fan) -> CliResult<Output> {
    let r = fan.validate();
    let cl = fan.class_group()?;
    let props = [
        ("complete", r.complete),
        ("simplicial", r.simplicial),
        ("smooth", r.smooth),
        ("convex_support", r.convex_support),
        ("semiprojective", r.semiprojective),
        ("projective", r.projective()),
    ];
    let mut t = Table::new("fan", &["property", "value"]);
    t.push(vec!["dimension".into(), fan.dim().to_string().into()]);
    t.push(vec!["rays".into(), fan.n_rays().to_string().into()]);
    t.push(vec![
        "maximal_cones".into(),
        fan.maximal_cones().len().to_string().into(),
    ]);
    t.push(vec!["class_rank".into(), cl.free_rank().to_string().into()]);
    t.push(vec!["torsion".into(), Cell::Vector(cl.torsion().to_vec())]);
    for (name, v) in props {
        t.push(vec![name.into(), yes_no(v)]);
    }
    let mut pc = Table::new("primitive collections", &["rays"]);
    let collections = if r.simplicial {
        fan.primitive_collections().to_vec()
    } else {
        Vec::new()
    };
    for &m in &collections {
        pc.push(vec![rays_cell(m)]);
    }
    let mut props_json = serde_json::Map::new();
    for (name, v) in props {
        props_json.insert(name.into(), json!(v));
    }
    let json = json!({
        "dimension": fan.dim(),
        "rays": fan.n_rays(),
        "maximal_cones": fan.maximal_cones().len(),
        "class_rank": cl.free_rank(),
        "torsion": json_ints(cl.torsion()),
        "properties": props_json,
        "primitive_collections": collections.iter().map(|&m| indices_of(m)).collect::<Vec<_>>(),
    });
    Ok(Output {
        json,
        tables: vec![t, pc],
    })
}

fn divisor_from_args(
    fan: &Fan,
    divisor: Option<Vec<BigInt>>,
    class: Option<Vec<BigInt>>,
) -> CliResult<ToricDivisor> {
    let rank = fan.class_rank()?;
    match (divisor, class) {
        (Some(d), None) if d.len() == fan.n_rays() => Ok(ToricDivisor::new(d)),
        (Some(c), None) | (None, Some(c)) if c.len() == rank => {
            Ok(fan.lift_class(&fan.free_class(&c)?)?)
        }
        (Some(d), None) => Err(immaculate_core::Error::DimensionMismatch {
            expected: fan.n_rays(),
            found: d.len(),
        }
        .into()),
        (None, Some(c)) => Err(immaculate_core::Error::DimensionMismatch {
            expected: rank,
            found: c.len(),
        }
        .into()),
        _ => Err(CliError::Usage(
            "give exactly one of --divisor and --class".into(),
        )),
    }
}

fn cohomology_output(
    fan: &Fan,
    d: &ToricDivisor,
    method: Method,
    field: Field,
    list_degrees: bool,
) -> CliResult<Output> {
    let mut used = Vec::new();
    let mut results: Vec<GradedCohomology> = Vec::new();
    let fan_side =
        matches!(method, Method::Fan) || (matches!(method, Method::Both) && fan.is_simplicial());
    if fan_side {
        results.push(cohomology_fan_side(fan, d, None, field)?);
        used.push("fan");
    }
    if matches!(method, Method::Both | Method::Polytope) {
        results.push(cohomology_polytope_side(
            &fan.nef_decompose(d)?,
            None,
            field,
        )?);
        used.push("polytope");
    }
    if results.windows(2).any(|w| w[0] != w[1]) {
        return Err(CliError::Usage(format!(
            "fan side gives {:?}, polytope side gives {:?}",
            results[0].totals(),
            results[1].totals()
        )));
    }
    let h = &results[0];
    let mut t = Table::new("cohomology", &["i", "h^i"]);
    for (i, v) in h.totals().iter().enumerate() {
        t.push(vec![i.to_string().into(), v.to_string().into()]);
    }
    let mut tables = vec![t];
    let mut json = json!({
        "divisor": json_ints(d.coefficients()),
        "class": json_ints(&fan.class_of(d.coefficients())?.free),
        "h": h.totals(),
        "methods": used,
        "field": field_name(field),
    });
    if list_degrees {
        let mut dt = Table::new("degrees", &["m", "h"]);
        let mut rows = Vec::new();
        for (m, hv) in h.degrees() {
            dt.push(vec![
                m.clone().into(),
                hv.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
                    .into(),
            ]);
            rows.push(json!({ "m": json_ints(m), "h": hv }));
        }
        tables.push(dt);
        json["degrees"] = Value::Array(rows);
    }
    Ok(Output { json, tables })
}

fn tempting_output(fan: &Fan, field: Field) -> CliResult<Output> {
    let data = tempting_subsets_over(fan, field)?;
    let masks = data.report.tempting();
    let mut t = Table::new("tempting subsets", &["mask", "rays", "decided_by"]);
    let mut subsets = Vec::new();
    for &m in &masks {
        let by = serde_json::to_value(data.report.status(m).decided_by).expect("serializes");
        let by = by.as_str().unwrap_or_default().to_string();
        t.push(vec![m.to_string().into(), rays_cell(m), by.clone().into()]);
        subsets.push(json!({ "mask": m, "rays": indices_of(m), "decided_by": by }));
    }
    let json = json!({ "count": masks.len(), "tempting": masks, "subsets": subsets, "field": field_name(field) });
    Ok(Output {
        json,
        tables: vec![t],
    })
}

/// Parallel lattice lines sharing one direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineGroup {
    pub direction: Vec<Int>,
    pub base_points: Vec<Vec<Int>>,
}

/// The locus as printed: lines grouped by direction, isolated classes, and
/// any remaining pieces as inequality systems.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocusTables {
    pub lines: Vec<LineGroup>,
    pub isolated: Vec<Vec<Int>>,
    pub other_pieces: Vec<String>,
    pub tempting: usize,
}

impl LocusTables {
    pub fn from_locus(locus: &LocusDescription) -> Self {
        let mut groups: BTreeMap<Vec<BigInt>, Vec<Vec<BigInt>>> = BTreeMap::new();
        for l in locus.lines() {
            groups
                .entry(l.direction.clone())
                .or_default()
                .push(l.base.clone());
        }
        let lines = groups
            .into_iter()
            .map(|(d, mut bases)| {
                bases.sort();
                LineGroup {
                    direction: output::ints(&d),
                    base_points: bases.iter().map(|b| output::ints(b)).collect(),
                }
            })
            .collect();
        let isolated = locus
            .isolated_points()
            .iter()
            .map(|p| output::ints(p))
            .collect();
        let mut other_pieces: Vec<String> = locus
            .pieces
            .iter()
            .filter_map(|p| match p {
                LocusPiece::Polyhedron { region } => Some(region.to_string()),
                _ => None,
            })
            .collect();
        other_pieces.sort();
        LocusTables {
            lines,
            isolated,
            other_pieces,
            tempting: locus.tempting.len(),
        }
    }
}

pub fn emit_locus_tables(t: &LocusTables) -> Output {
    let big = |v: &[Int]| v.iter().map(|x| x.0.clone()).collect::<Vec<_>>();
    let mut lines = Table::new("lines", &["direction", "base point"]);
    for g in &t.lines {
        for b in &g.base_points {
            lines.push(vec![big(&g.direction).into(), big(b).into()]);
        }
    }
    let mut isolated = Table::new("isolated", &["class"]);
    for p in &t.isolated {
        isolated.push(vec![big(p).into()]);
    }
    let mut tables = vec![lines, isolated];
    if !t.other_pieces.is_empty() {
        let mut other = Table::new("other pieces", &["inequalities"]);
        for p in &t.other_pieces {
            other.push(vec![p.replace('\n', "; ").into()]);
        }
        tables.push(other);
    }
    Output {
        json: serde_json::to_value(t).expect("serializes"),
        tables,
    }
}

fn really_immaculate_output(fan: &Fan, class: &[BigInt], field: Field) -> CliResult<Output> {
    let c = fan.free_class(class)?;
    let imm = is_immaculate_over(fan, &c, field)?;
    let really = is_really_immaculate(fan, &c)?;
    let mut t = Table::new("class", &["class", "immaculate", "really_immaculate"]);
    t.push(vec![class.to_vec().into(), yes_no(imm), yes_no(really)]);
    let json = json!({ "class": json_ints(class), "immaculate": imm, "really_immaculate": really });
    Ok(Output {
        json,
        tables: vec![t],
    })
}

fn cube_output(fan: &Fan) -> CliResult<Output> {
    let r = cube_analysis(fan)?;
    let mut summary = Table::new("projected cube", &["property", "value"]);
    summary.push(vec![
        "image_vertices".into(),
        r.image_vertices.len().to_string().into(),
    ]);
    summary.push(vec![
        "lattice_points".into(),
        r.lattice_points.len().to_string().into(),
    ]);
    summary.push(vec![
        "immaculate_classes".into(),
        r.immaculate_classes.len().to_string().into(),
    ]);
    summary.push(vec![
        "injective_on_maculate".into(),
        yes_no(r.injective_on_maculate),
    ]);
    summary.push(vec![
        "maculate_vertices_tempting".into(),
        yes_no(r.maculate_vertices_tempting),
    ]);
    let mut imm = Table::new("immaculate vertex classes", &["class"]);
    for c in &r.immaculate_classes {
        imm.push(vec![c.clone().into()]);
    }
    let json = json!({
        "image_vertices": r.image_vertices.iter().map(|v| json_ints(v)).collect::<Vec<_>>(),
        "lattice_points": r.lattice_points.len(),
        "immaculate_classes": r.immaculate_classes.iter().map(|v| json_ints(v)).collect::<Vec<_>>(),
        "injective_on_maculate": r.injective_on_maculate,
        "maculate_vertices_tempting": r.maculate_vertices_tempting,
    });
    Ok(Output {
        json,
        tables: vec![summary, imm],
    })
}

fn fan_output(fan: &Fan) -> Output {
    let json = serde_json::to_value(fan.to_json()).expect("serializes");
    let mut t = Table::new("fan", &["json"]);
    t.push(vec![json.to_string().into()]);
    Output {
        json,
        tables: vec![t],
    }
}

fn membership(class: &[BigInt], immaculate: bool, extra: Value) -> Output {
    let mut t = Table::new("class", &["class", "immaculate"]);
    t.push(vec![class.to_vec().into(), yes_no(immaculate)]);
    let mut json = json!({ "class": json_ints(class), "immaculate": immaculate });
    if let (Value::Object(a), Value::Object(b)) = (&mut json, extra) {
        a.extend(b);
    }
    Output {
        json,
        tables: vec![t],
    }
}

fn check_len(class: &[BigInt], rank: usize) -> CliResult<()> {
    if class.len() != rank {
        return Err(immaculate_core::Error::DimensionMismatch {
            expected: rank,
            found: class.len(),
        }
        .into());
    }
    Ok(())
}

fn family_output(f: Family) -> CliResult<Output> {
    match f {
        Family::Pic2 { l1, l2, c, common } => {
            let data = PicTwoData { l1, l2, c };
            let fan = build_pic2(&data)?;
            if common.emit_fan {
                return Ok(fan_output(&fan));
            }
            if let Some(class) = common.class {
                check_len(&class, 2)?;
                return Ok(membership(
                    &class,
                    pic2_immaculate(&data, &class),
                    json!({}),
                ));
            }
            let r = common.radius;
            let mut t = Table::new("immaculate classes", &["class"]);
            let mut points = Vec::new();
            for x in -r..=r {
                for y in -r..=r {
                    let p = vec![BigInt::from(x), BigInt::from(y)];
                    if pic2_immaculate(&data, &p) {
                        points.push(json_ints(&p));
                        t.push(vec![p.into()]);
                    }
                }
            }
            Ok(Output {
                json: json!({ "radius": r, "fano": data.is_fano(), "immaculate": points }),
                tables: vec![t],
            })
        }
        Family::Splitting { params, common } => {
            let data: SplittingData = serde_json::from_str(&read(&params)?)
                .map_err(|e| CliError::Usage(format!("{}: {e}", params.display())))?;
            let fan = build_splitting(&data)?;
            if common.emit_fan {
                return Ok(fan_output(&fan));
            }
            let hull = splitting_immaculate_general(&data)?;
            if let Some(class) = common.class {
                check_len(&class, data.k())?;
                let c = fan.free_class(&class)?;
                let imm = is_immaculate_over(&fan, &c, Field::Rational)?;
                return Ok(membership(
                    &class,
                    imm,
                    json!({ "in_hull": hull.slabs.contains(&class) }),
                ));
            }
            let mut t = Table::new("slabs", &["free", "fixed"]);
            let mut slabs = Vec::new();
            for s in &hull.slabs.slabs {
                t.push(vec![s.free.to_string().into(), s.fixed.clone().into()]);
                slabs.push(json!({ "free": s.free, "fixed": json_ints(&s.fixed) }));
            }
            let json = json!({ "general": !hull.lower_bound_only, "lower_bound_only": hull.lower_bound_only, "slabs": slabs });
            Ok(Output {
                json,
                tables: vec![t],
            })
        }
        Family::Pic3 { p, c, b, common } => {
            let p: [usize; 5] = p
                .try_into()
                .map_err(|_| CliError::Usage("--p needs exactly five entries".into()))?;
            let data = PicThreeData { p, c, b };
            if common.emit_fan {
                return Ok(fan_output(&build_pic3(&data)?));
            }
            if let Some(class) = common.class {
                check_len(&class, 3)?;
                let fan = if data.is_large() {
                    None
                } else {
                    Some(build_pic3(&data)?)
                };
                let a = pic3_immaculate_closed_form(&data, &class, fan.as_ref())?;
                let status = serde_json::to_value(a.status).expect("serializes");
                let via = serde_json::to_value(a.via).expect("serializes");
                let mut t = Table::new("class", &["class", "status", "via"]);
                t.push(vec![
                    class.clone().into(),
                    status.as_str().unwrap_or_default().into(),
                    via.as_str().unwrap_or_default().into(),
                ]);
                return Ok(Output {
                    json: json!({ "class": json_ints(&class), "status": status, "via": via }),
                    tables: vec![t],
                });
            }
            let cands = pic3_candidates(&data)?;
            let vertices = |poly: &immaculate_core::polyhedra::Polyhedron| {
                let mut v = poly.integral_vertices().unwrap_or_default();
                v.sort();
                v
            };
            let mut par = Table::new(
                "full lines over the (y, z) parallelograms",
                &["parallelogram", "vertex"],
            );
            for (name, poly) in [("P1", &cands.p1), ("P2", &cands.p2)] {
                for v in vertices(poly) {
                    par.push(vec![name.into(), v.into()]);
                }
            }
            let mut seg = Table::new("segments", &["type", "y", "z", "x_min", "x_max"]);
            for (name, list) in [("A", &cands.type_a), ("B", &cands.type_b)] {
                for s in list {
                    seg.push(vec![
                        name.into(),
                        s.y.to_string().into(),
                        s.z.to_string().into(),
                        s.x_min.to_string().into(),
                        s.x_max.to_string().into(),
                    ]);
                }
            }
            let json = json!({
                "dimension": data.dim(),
                "large": data.is_large(),
                "canonical_class": data.canonical_class(),
                "p1_vertices": vertices(&cands.p1).iter().map(|v| json_ints(v)).collect::<Vec<_>>(),
                "p2_vertices": vertices(&cands.p2).iter().map(|v| json_ints(v)).collect::<Vec<_>>(),
                "type_a": cands.type_a,
                "type_b": cands.type_b,
            });
            Ok(Output {
                json,
                tables: vec![par, seg],
            })
        }
    }
}

fn exceptional_output(
    fan: &Fan,
    length: usize,
    region: &Region,
    orbits: bool,
) -> CliResult<Output> {
    let points = match region {
        Region::Cube => projected_cube(fan)?,
        Region::Box(r) => box_region(fan, *r)?,
    };
    let query = SequenceQuery {
        region: Some(points),
        ..SequenceQuery::new(fan, length)
    };
    let seqs = find_exceptional_sequences(&query)?;
    let header: Vec<String> = (0..length).map(|i| format!("L{i}")).collect();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let to_json = |s: &[Vec<BigInt>]| s.iter().map(|l| json_ints(l)).collect::<Vec<_>>();
    if !orbits {
        let mut t = Table::new("exceptional sequences", &header);
        for s in &seqs {
            t.push(s.iter().cloned().map(Cell::from).collect());
        }
        let json = json!({ "count": seqs.len(), "sequences": seqs.iter().map(|s| to_json(s)).collect::<Vec<_>>() });
        return Ok(Output {
            json,
            tables: vec![t],
        });
    }
    let actions: Vec<_> = fan
        .fan_automorphisms()?
        .into_iter()
        .map(|g| g.class_action)
        .collect();
    let orbits = orbit_classes(&seqs, &actions);
    let mut t = Table::new(
        "orbit representatives",
        &[&["size"], header.as_slice()].concat(),
    );
    let mut reps = Vec::new();
    for o in &orbits {
        let mut row: Vec<Cell> = vec![o.members.len().to_string().into()];
        row.extend(o.representative.iter().cloned().map(Cell::from));
        t.push(row);
        reps.push(json!({ "size": o.members.len(), "representative": to_json(&o.representative) }));
    }
    let json = json!({ "count": seqs.len(), "orbits": reps, "automorphisms": actions.len() });
    Ok(Output {
        json,
        tables: vec![t],
    })
}

fn execute(cli: Cli) -> CliResult<Output> {
    let field = cli.field;
    match cli.command {
        Command::Validate(f) => validate(&load_fan(&f)?),
        Command::Cohomology {
            fan,
            divisor,
            class,
            method,
            degrees,
        } => {
            let fan = load_fan(&fan)?;
            let d = divisor_from_args(&fan, divisor, class)?;
            cohomology_output(&fan, &d, method, field, degrees)
        }
        Command::Tempting(f) => tempting_output(&load_fan(&f)?, field),
        Command::ImmaculateLocus(f) => {
            let fan = load_fan(&f)?;
            let order = tempting_subsets_over(&fan, field)?.report.tempting();
            let locus = immaculate_locus_in_order(&fan, &order)?;
            Ok(emit_locus_tables(&LocusTables::from_locus(&locus)))
        }
        Command::ReallyImmaculate { fan, class } => {
            really_immaculate_output(&load_fan(&fan)?, &class, field)
        }
        Command::Cube(f) => cube_output(&load_fan(&f)?),
        Command::Family(f) => family_output(f),
        Command::Exceptional {
            fan,
            length,
            region,
            orbits,
        } => exceptional_output(&load_fan(&fan)?, length, &region, orbits),
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("IMMACULATE_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}

/// Runs one command line, writing results to `out` and diagnostics to
/// standard error. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    configure_threads();
    let format = cli.format;
    match execute(cli) {
        Ok(o) => match out.write_all(o.render(format).as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: {e}");
                1
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
