//! Subcommand implementations. Each returns the process exit code.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use rootoid_core::builders::{
    build_arrangement, build_coxeter, coxeter_ball, reflection_subgroup, Arrangement,
    CoxeterMatrix, DEFAULT_BUDGET,
};
use rootoid_core::cat::{check_prd_morphism, complete_structure, cover, grade_morphism};
use rootoid_core::classify::{
    abridge, classify, is_rootoid, is_rootoid_exhaustive, slc_check, PropertyReport,
};
use rootoid_core::groupoid::{Mor, Obj};
use rootoid_core::prd::Protorootoid;
use serde_json::json;

use crate::format::{self, MorphismFile, ProtorootoidSpec, StructureFile};
use crate::{Command, ExportKind};

pub const BUDGET_VAR: &str = "ROOTOIDLAB_BUDGET";

/// The enumeration budget, from `ROOTOIDLAB_BUDGET` when set.
pub fn budget() -> Result<usize> {
    match std::env::var(BUDGET_VAR) {
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_BUDGET),
        Err(e) => Err(anyhow!("{BUDGET_VAR}: {e}")),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => bail!("{BUDGET_VAR} must be a positive integer, got `{v}`"),
        },
    }
}

pub fn run(command: Command) -> Result<u8> {
    match command {
        Command::Build { input, output } => {
            let p = load(&input)?;
            emit(output.as_deref(), &canonical(&p)?)?;
            Ok(0)
        }
        Command::Classify {
            input,
            json,
            exhaustive_jop,
            abridge_first,
        } => {
            let mut p = load(&input)?;
            if abridge_first {
                p = abridge(&p);
            }
            let (text, code) = classify_report(&p, json, exhaustive_jop)?;
            emit(None, &text)?;
            Ok(code)
        }
        Command::Export {
            input,
            what,
            object,
        } => {
            let p = load(&input)?;
            emit(None, &export(&p, what, object.as_deref())?)?;
            Ok(0)
        }
        Command::CheckMorphism {
            source,
            target,
            morphism,
        } => {
            let source = Arc::new(load(&source)?);
            let target = Arc::new(load(&target)?);
            let file = format::parse_morphism(&read(&morphism)?)
                .with_context(|| morphism.display().to_string())?;
            let f = file.build(source, target)?;
            let (text, code) = morphism_report(&f);
            emit(None, &text)?;
            Ok(code)
        }
        Command::Cover {
            input,
            output,
            morphism,
        } => {
            let p = Arc::new(load(&input)?);
            let size = cover_size(&p);
            let budget = budget()?;
            if size > budget {
                bail!("the universal cover has {size} morphisms, over the budget of {budget}");
            }
            let (up, f) = cover(&p)?;
            if let Some(path) = morphism {
                write(&path, &format::to_json(&MorphismFile::from_morphism(&f))?)?;
            }
            emit(output.as_deref(), &canonical(&up)?)?;
            Ok(0)
        }
        Command::Abridge { input, output } => {
            let p = load(&input)?;
            emit(output.as_deref(), &canonical(&abridge(&p))?)?;
            Ok(0)
        }
        Command::Coxeter {
            kind,
            matrix,
            labels,
            cutoff,
            subgroup,
            output,
        } => {
            let m = coxeter_matrix(kind.as_deref(), matrix.as_deref(), labels.as_deref())?;
            let (text, code) = coxeter_report(&m, cutoff, subgroup.as_deref(), output.as_deref())?;
            emit(None, &text)?;
            Ok(code)
        }
        Command::Arrangement { normals, output } => {
            let arr = parse_normals(&normals)?;
            let (text, code) = arrangement_report(&arr, output.as_deref())?;
            emit(None, &text)?;
            Ok(code)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Reads and elaborates a structure file.
pub fn load(path: &Path) -> Result<Protorootoid> {
    let text = read(path)?;
    let file = format::parse_structure(&text).with_context(|| path.display().to_string())?;
    format::elaborate(&file, budget()?).with_context(|| path.display().to_string())
}

pub fn canonical(p: &Protorootoid) -> Result<String> {
    format::to_json(&StructureFile::Protorootoid(
        ProtorootoidSpec::from_protorootoid(p),
    ))
}

fn labels(p: &Protorootoid, ms: &[Mor]) -> Vec<String> {
    let mut out: Vec<String> = ms
        .iter()
        .map(|&g| p.groupoid().label(g).to_string())
        .collect();
    out.sort();
    out.dedup();
    out
}

fn headline(p: &Protorootoid, r: &PropertyReport) -> String {
    let kind = if r.principal {
        "principal rootoid"
    } else if r.preprincipal {
        "preprincipal rootoid"
    } else {
        "rootoid"
    };
    let mut parts = vec![kind.to_string()];
    if r.complete {
        parts.push("complete".into());
    }
    let simple = labels(p, &r.simple_morphisms);
    if !simple.is_empty() {
        parts.push(format!("simple generators: {}", simple.join(",")));
    }
    parts.join("; ")
}

/// The human (or JSON) classification report and its exit code.
pub fn classify_report(
    p: &Protorootoid,
    as_json: bool,
    exhaustive_jop: bool,
) -> Result<(String, u8)> {
    let verdict = if exhaustive_jop {
        is_rootoid_exhaustive(p)?
    } else {
        is_rootoid(p)
    };
    let report = classify(p);
    let failure = verdict.failure.as_ref().map(|f| f.describe(p));
    let slc = if p.is_faithful() {
        match slc_check(p)? {
            None => Ok(()),
            Some(f) => Err(f.describe(p)),
        }
    } else {
        Err("not applicable: not faithful".to_string())
    };
    let code = u8::from(failure.is_some());
    if as_json {
        let mut doc = serde_json::Map::new();
        for (name, value) in report.flags() {
            doc.insert(name.into(), json!(value));
        }
        doc.insert(
            "atomic_morphisms".into(),
            json!(labels(p, &report.atomic_morphisms)),
        );
        doc.insert(
            "simple_morphisms".into(),
            json!(labels(p, &report.simple_morphisms)),
        );
        doc.insert("witnesses".into(), json!(report.witnesses));
        doc.insert("rootoid_failure".into(), json!(failure));
        doc.insert("semilocal_criterion".into(), json!(slc.as_ref().err()));
        return Ok((format::to_json(&doc)?, code));
    }
    let mut out = String::new();
    match &failure {
        None => writeln!(out, "{}", headline(p, &report))?,
        Some(f) => writeln!(out, "not a rootoid: {f}")?,
    }
    write!(out, "{report}")?;
    match &slc {
        Ok(()) => writeln!(out, "semilocal criterion: holds")?,
        Err(e) => writeln!(out, "semilocal criterion: {e}")?,
    }
    writeln!(
        out,
        "atomic morphisms: {}",
        labels(p, &report.atomic_morphisms).join(",")
    )?;
    if failure.is_none() && report.complete && report.abridged {
        let s = complete_structure(&Arc::new(p.clone()))?;
        let gp = p.groupoid();
        let omega: Vec<String> = gp
            .objects()
            .map(|a| format!("{}={}", gp.object_label(a), gp.label(s.omega[a.0])))
            .collect();
        writeln!(out, "longest elements: {}", omega.join(", "))?;
    }
    for (name, w) in &report.witnesses {
        writeln!(out, "witness {name}: {w}")?;
    }
    Ok((out, code))
}

fn object_of(p: &Protorootoid, object: Option<&str>) -> Result<Option<Obj>> {
    match object {
        None => Ok(None),
        Some(label) => Ok(Some(
            p.groupoid()
                .objects()
                .find(|&a| p.groupoid().object_label(a) == label)
                .ok_or_else(|| anyhow!("unknown object `{label}`"))?,
        )),
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn export(p: &Protorootoid, what: ExportKind, object: Option<&str>) -> Result<String> {
    let gp = p.groupoid();
    let chosen = object_of(p, object)?;
    let mut out = String::new();
    if what == ExportKind::RootTable {
        writeln!(out, "morphism\tcod\tdom\t|N|\tN")?;
        for g in gp
            .morphisms()
            .filter(|&g| chosen.is_none_or(|a| gp.cod(g) == a))
        {
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                gp.label(g),
                gp.object_label(gp.cod(g)),
                gp.object_label(gp.dom(g)),
                p.l_n(g),
                p.n(g)
            )?;
        }
        return Ok(out);
    }
    let a = match chosen.or_else(|| gp.objects().next()) {
        Some(a) => a,
        None => bail!("the groupoid has no objects"),
    };
    let wo = p.weak_order(a);
    let name = |i: usize| {
        wo.witnesses(i)
            .iter()
            .map(|&g| gp.label(g))
            .collect::<Vec<_>>()
            .join("=")
    };
    match what {
        ExportKind::WeakOrder => {
            writeln!(out, "digraph \"{}\" {{", dot_escape(gp.object_label(a)))?;
            writeln!(out, "  rankdir=BT;")?;
            for i in 0..wo.len() {
                writeln!(
                    out,
                    "  n{i} [label=\"{}\\n{}\"];",
                    dot_escape(&name(i)),
                    dot_escape(&wo.value(i).to_string())
                )?;
            }
            for (lo, hi) in wo.hasse() {
                writeln!(out, "  n{lo} -> n{hi};")?;
            }
            writeln!(out, "}}")?;
        }
        ExportKind::Hasse => {
            for (lo, hi) in wo.hasse() {
                writeln!(out, "{}\t{}", name(lo), name(hi))?;
            }
        }
        ExportKind::RootTable => unreachable!(),
    }
    Ok(out)
}

/// The grade report of a morphism and its exit code (0 iff in `Rd`).
pub fn morphism_report(f: &rootoid_core::cat::PrdMorphism) -> (String, u8) {
    let mut out = String::new();
    if let Err(v) = check_prd_morphism(f) {
        out.push_str("in_prd: false\nin_rd: false\nin_Rd: false\nin_RdE: false\n");
        out.push_str(&format!("witness in_prd: {}\n", v.describe(f)));
        return (out, 1);
    }
    match grade_morphism(f) {
        Err(e) => {
            out.push_str("in_prd: true\n");
            out.push_str(&format!("not graded further: {e}\n"));
            (out, 1)
        }
        Ok(g) => {
            out.push_str(&format!(
                "in_prd: {}\nin_rd: {}\nin_Rd: {}\nin_RdE: {}\n",
                g.in_prd, g.in_rd, g.in_Rd, g.in_RdE
            ));
            out.push_str(&format!(
                "disjointness converse: {}\n",
                g.aop_converse_holds
            ));
            for (name, w) in &g.witnesses {
                out.push_str(&format!("witness {name}: {w}\n"));
            }
            (out, u8::from(!g.in_Rd))
        }
    }
}

/// Morphisms of the universal cover: the square of the star size per component.
fn cover_size(p: &Protorootoid) -> usize {
    let gp = p.groupoid();
    gp.components()
        .components
        .iter()
        .map(|c| gp.star(c[0]).len().saturating_mul(gp.star(c[0]).len()))
        .fold(0usize, usize::saturating_add)
}

/// The Coxeter matrix of a named finite or dihedral type.
fn named_type(kind: &str) -> Result<CoxeterMatrix> {
    let bad = || anyhow!("unknown coxeter type `{kind}`");
    let (family, rest) = kind.split_at(kind.chars().next().map_or(0, char::len_utf8));
    let family = family.to_ascii_uppercase();
    if family == "I" {
        let m = rest
            .strip_prefix("2(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let m = match m {
            "inf" | "∞" | "0" => None,
            _ => Some(m.parse::<usize>().map_err(|_| bad())?),
        };
        return Ok(CoxeterMatrix::dihedral(m)?);
    }
    let n: usize = rest.parse().map_err(|_| bad())?;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    match (family.as_str(), n) {
        ("A", 1..) => edges.extend((1..n).map(|i| (i - 1, i, 3))),
        ("B", 2..) => {
            edges.extend((1..n - 1).map(|i| (i - 1, i, 3)));
            edges.push((n - 2, n - 1, 4));
        }
        ("D", 4..) => {
            edges.extend((1..n - 1).map(|i| (i - 1, i, 3)));
            edges.push((n - 3, n - 1, 3));
        }
        ("E", 6..=8) => {
            edges.extend([(0, 2, 3), (1, 3, 3)]);
            edges.extend((3..n).map(|i| (i - 1, i, 3)));
        }
        ("F", 4) => edges.extend([(0, 1, 3), (1, 2, 4), (2, 3, 3)]),
        ("H", 3 | 4) => {
            edges.push((0, 1, 5));
            edges.extend((2..n).map(|i| (i - 1, i, 3)));
        }
        _ => return Err(bad()),
    }
    let mut rows = vec![vec![Some(2); n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = Some(1);
    }
    for (i, j, m) in edges {
        rows[i][j] = Some(m);
        rows[j][i] = Some(m);
    }
    Ok(CoxeterMatrix::with_default_labels(rows)?)
}

pub fn coxeter_matrix(
    kind: Option<&str>,
    matrix: Option<&str>,
    labels: Option<&str>,
) -> Result<CoxeterMatrix> {
    let m = match (kind, matrix) {
        (Some(k), _) => named_type(k)?,
        (None, Some(text)) => {
            let rows: Vec<Vec<format::MatrixEntry>> =
                serde_json::from_str(text).context("malformed --matrix")?;
            format::CoxeterSpec {
                labels: None,
                matrix: rows,
            }
            .matrix()?
        }
        (None, None) => bail!("give --type or --matrix"),
    };
    match labels {
        None => Ok(m),
        Some(l) => {
            let labels = l.split(',').map(|s| s.trim().to_string()).collect();
            Ok(CoxeterMatrix::new(labels, m.rows().to_vec())?)
        }
    }
}

pub fn coxeter_report(
    m: &CoxeterMatrix,
    cutoff: Option<usize>,
    subgroup: Option<&str>,
    output: Option<&Path>,
) -> Result<(String, u8)> {
    let mut out = String::new();
    if let Some(cutoff) = cutoff {
        if output.is_some() || subgroup.is_some() {
            bail!(
                "a length ball is not a protorootoid; drop --cutoff to use --output or --subgroup"
            );
        }
        let ball = coxeter_ball(m, cutoff, budget()?)?;
        writeln!(
            out,
            "elements of length at most {cutoff}: {}",
            ball.labels.len()
        )?;
        writeln!(out, "reflections: {}", ball.reflections.len())?;
        writeln!(out, "truncated: {}", ball.truncated)?;
        writeln!(
            out,
            "inversion sets and lengths agree: {}",
            ball.checks_hold
        )?;
        for ((w, l), n) in ball
            .labels
            .iter()
            .zip(&ball.lengths)
            .zip(&ball.inversion_sets)
        {
            writeln!(out, "{w}\t{l}\t{{{}}}", n.join(","))?;
        }
        return Ok((out, u8::from(!ball.checks_hold)));
    }
    let sys = build_coxeter(m, budget()?)?;
    let w0 = sys.longest();
    writeln!(out, "order: {}", sys.order())?;
    writeln!(out, "reflections: {}", sys.reflections.len())?;
    writeln!(
        out,
        "longest element: {} (length {})",
        sys.labels[w0],
        sys.length(w0)
    )?;
    let c = &sys.checks;
    for (name, v) in [
        ("inversion formula", c.inversion_formula),
        ("length formula", c.length_formula),
        ("parity", c.parity),
        ("strong exchange", c.strong_exchange),
        ("root system", c.root_system),
    ] {
        writeln!(out, "{name}: {v}")?;
    }
    let mut ok = c.holds();
    if let Some(gens) = subgroup {
        let gens: Vec<&str> = gens.split(',').map(str::trim).collect();
        let sub = reflection_subgroup(&sys, &gens)?;
        let names = |ws: &[usize]| {
            ws.iter()
                .map(|&w| sys.labels[w].as_str())
                .collect::<Vec<_>>()
                .join(",")
        };
        writeln!(out, "subgroup order: {}", sub.elements.len())?;
        writeln!(out, "subgroup reflections: {}", names(&sub.reflections))?;
        writeln!(out, "subgroup simple generators: {}", names(&sub.simple))?;
        writeln!(out, "subgroup exchange condition: {}", sub.exchange_holds)?;
        writeln!(
            out,
            "inclusion preserves the order: {}",
            sub.order_preserving
        )?;
        match &sub.non_isomorphism_witness {
            Some((x, y)) => writeln!(
                out,
                "order not reflected: N'({x}) <= N'({y}) but N({x}) is not in N({y})"
            )?,
            None => writeln!(out, "order reflected: true")?,
        }
        ok &= sub.exchange_holds && sub.order_preserving;
    }
    if let Some(path) = output {
        write(path, &canonical(&sys.protorootoid)?)?;
    }
    Ok((out, u8::from(!ok)))
}

pub fn parse_normals(text: &str) -> Result<Arrangement> {
    let normals = text
        .split(';')
        .map(|v| {
            v.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .with_context(|| format!("invalid coordinate `{x}`"))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let dim = normals.first().map_or(0, Vec::len);
    Ok(Arrangement::new(dim, normals)?)
}

pub fn arrangement_report(arr: &Arrangement, output: Option<&Path>) -> Result<(String, u8)> {
    let r = build_arrangement(arr)?;
    let mut out = String::new();
    writeln!(out, "chambers: {}", r.chambers.len())?;
    for (c, walls) in r.chambers.iter().zip(&r.walls) {
        let walls: Vec<String> = walls.iter().map(usize::to_string).collect();
        writeln!(out, "{}\twalls {}", c.label, walls.join(","))?;
    }
    match &r.non_simplicial_witness {
        None => writeln!(out, "simplicial: true")?,
        Some((c, k)) => writeln!(out, "simplicial: false (chamber {c} has {k} walls)")?,
    }
    let verdict = is_rootoid(&r.protorootoid);
    match &verdict.failure {
        None => writeln!(out, "rootoid: true")?,
        Some(f) => writeln!(out, "not a rootoid: {}", f.describe(&r.protorootoid))?,
    }
    if let Some(path) = output {
        write(path, &canonical(&r.protorootoid)?)?;
    }
    Ok((out, u8::from(!verdict.holds())))
}
