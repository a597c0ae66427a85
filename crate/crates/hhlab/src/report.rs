//! Command implementations and deterministic report rendering for the
//! `hhlab` binary.

use crate::families::{
    build_presentation, dual_kq_view, printed_dual, CenterModel, Family, FamilyParams, Shape,
};
use crate::field::FieldSpec;
use crate::hochschild::Hochschild;
use crate::quadratic::{
    build_reduction_system, confluence_check, quadratic_dual, relation_span_equal, Algebra,
};
use crate::resolution::Resolution;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Machine,
}

impl Format {
    pub fn parse(text: &str) -> Result<Format, Error> {
        match text {
            "table" => Ok(Format::Table),
            "machine" => Ok(Format::Machine),
            other => Err(Error::new(format!("unknown format `{other}`"))),
        }
    }
}

/// An ordered key-value report; `pass` aggregates every recorded check.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub lines: Vec<(String, String)>,
    pub pass: bool,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            command: command.to_string(),
            lines: Vec::new(),
            pass: true,
        }
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.lines.push((key.into(), value.into()));
    }

    pub fn check(&mut self, key: impl Into<String>, ok: bool) {
        self.pass = self.pass && ok;
        self.lines
            .push((key.into(), if ok { "pass" } else { "fail" }.to_string()));
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Machine => {
                out.push_str("schema: 1\n");
                out.push_str(&format!("command: {}\n", self.command));
                for (k, v) in &self.lines {
                    out.push_str(&format!("{k}: {v}\n"));
                }
                out.push_str(&format!(
                    "status: {}\n",
                    if self.pass { "pass" } else { "fail" }
                ));
            }
            Format::Table => {
                let width = self.lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                out.push_str(&format!("{}\n", self.command));
                for (k, v) in &self.lines {
                    out.push_str(&format!("  {k:width$}  {v}\n"));
                }
                out.push_str(&format!(
                    "overall: {}\n",
                    if self.pass { "pass" } else { "fail" }
                ));
            }
        }
        out
    }
}

/// Build family parameters from CLI strings. The `q` argument is a
/// comma-separated scalar list, or `generic` (every entry is the function
/// field variable) or `ones`.
pub fn build_params(
    family: &str,
    m: usize,
    n: Option<usize>,
    field: &str,
    q: &str,
) -> Result<FamilyParams, Error> {
    let family = Family::parse(family)?;
    let field = FieldSpec::parse(field)?;
    let n = n.unwrap_or(1);
    let count = if family.is_mn() { m * n } else { m };
    let entries = match q {
        "generic" => {
            let t = field.generator()?;
            vec![t; count]
        }
        "ones" => vec![field.one(); count],
        list => list
            .split(',')
            .map(|s| field.parse_scalar(s.trim()))
            .collect::<Result<Vec<_>, _>>()?,
    };
    FamilyParams::new(family, m, n, field, entries)
}

fn shape_name(model: &CenterModel) -> String {
    match &model.shape {
        Shape::ScalarsOnly => "scalars-only".to_string(),
        Shape::KPlusXYIdeal => "k-plus-xy-ideal".to_string(),
        Shape::KPlusXYIdealEven => "k-plus-xy-ideal-even".to_string(),
        Shape::TruncatedCone(p) => format!("truncated-cone({p})"),
    }
}

pub fn cmd_koszul_check(fp: &FamilyParams) -> Result<Report, Error> {
    let mut report = Report::new("koszul-check");
    let primal = build_presentation(fp)?;
    let rs = build_reduction_system(&primal)?;
    let primal_conf = confluence_check(&primal.quiver, &rs);
    report.push("family", fp.family.name());
    report.push("relations", primal.relations.len().to_string());
    report.check("primal confluence", primal_conf.ok());
    for ov in &primal_conf.unresolved {
        report.push(
            "unresolved overlap",
            primal.quiver.path_to_string(&ov.word),
        );
    }
    let dual = dual_kq_view(fp)?;
    let dual_rs = build_reduction_system(&dual)?;
    let dual_conf = confluence_check(&dual.quiver, &dual_rs);
    report.check("dual confluence", dual_conf.ok());
    for ov in &dual_conf.unresolved {
        report.push("unresolved overlap", dual.quiver.path_to_string(&ov.word));
    }
    Ok(report)
}

pub fn cmd_dual_print(fp: &FamilyParams) -> Result<Report, Error> {
    let mut report = Report::new("dual-print");
    report.push("family", fp.family.name());
    let primal = build_presentation(fp)?;
    let dual_op = quadratic_dual(&primal)?;
    for rel in &dual_op.relations {
        report.push("dual relation", dual_op.quiver.combo_to_string(rel));
    }
    report.check(
        "matches expected relations",
        relation_span_equal(&dual_op, &printed_dual(fp)?)?,
    );
    let double = quadratic_dual(&dual_op)?;
    report.check("double dual returns original", {
        relation_span_equal(&double, &primal)?
    });
    Ok(report)
}

pub fn cmd_hh_dims(fp: &FamilyParams, max_degree: usize) -> Result<Report, Error> {
    if fp.family != Family::LambdaMN || fp.m != fp.n {
        return Err(Error::new("hh-dims requires the square torus family"));
    }
    let mut report = Report::new("hh-dims");
    report.push("n", fp.n.to_string());
    match fp.parameter_product().order()? {
        Some(d) => report.push(
            "notice",
            format!(
                "parameter product has finite order {d}; the generic-parameter \
                 dimension table is not asserted"
            ),
        ),
        None => report.push("parameter product", "not a root of unity".to_string()),
    }
    let alg = Algebra::new(build_presentation(fp)?)?;
    let res = Resolution::new(fp, &alg)?;
    let hh = Hochschild::new(&res);
    for l in 0..=max_degree {
        report.push(format!("hh^{l}"), hh.hh_dimension(l).to_string());
    }
    let mut agree = true;
    for l in 1..=max_degree + 1 {
        let a = hh.delta_matrix(l);
        let b = hh.delta_closed_form(l);
        agree = agree
            && a.rows == b.rows
            && a.cols == b.cols
            && a.entries().all(|(r, c, v)| b.get(r, c) == *v)
            && b.entries().all(|(r, c, v)| a.get(r, c) == *v);
    }
    report.check("closed-form differential agrees", agree);
    Ok(report)
}

pub fn cmd_cup(fp: &FamilyParams) -> Result<Report, Error> {
    if fp.family != Family::LambdaMN || fp.m != fp.n {
        return Err(Error::new("cup requires the square torus family"));
    }
    let mut report = Report::new("cup");
    let alg = Algebra::new(build_presentation(fp)?)?;
    let res = Resolution::new(fp, &alg)?;
    let hh = Hochschild::new(&res);
    let fa = hh.one_cocycle_a();
    let fb = hh.one_cocycle_b();
    report.check("u and v are cocycles", hh.is_cocycle(1, &fa) && hh.is_cocycle(1, &fb));
    let uv = hh.cup_one_one(&fa, &fb)?;
    let vu = hh.cup_one_one(&fb, &fa)?;
    report.check("u*v nonzero in hh^2", !hh.is_coboundary(2, &uv)?);
    let fixture = {
        let (psi0, psi1) = hh.printed_lift();
        report.check("fixture lift commutes", hh.lift_is_valid(&fb, &psi0, &psi1)?);
        hh.compose_with_lift(&fa, &psi1)?
    };
    report.check("u*v matches fixture class", hh.classes_equal(2, &uv, &fixture)?);
    let anti: Vec<_> = uv.iter().zip(&vu).map(|(a, b)| a.add(b)).collect();
    report.check("u*v + v*u = 0", hh.is_coboundary(2, &anti)?);
    report.check("u^2 = 0", hh.is_coboundary(2, &hh.cup_one_one(&fa, &fa)?)?);
    report.check("v^2 = 0", hh.is_coboundary(2, &hh.cup_one_one(&fb, &fb)?)?);
    Ok(report)
}

pub fn cmd_center(fp: &FamilyParams, max_length: usize) -> Result<Report, Error> {
    if !fp.family.is_gamma() {
        return Err(Error::new("center requires a coextension family"));
    }
    let mut report = Report::new("center");
    report.push("family", fp.family.name());
    let alg = Algebra::new(dual_kq_view(fp)?)?;
    let mr = crate::center::match_structure(fp, &alg, max_length)?;
    report.push("model", shape_name(&mr.model));
    if let Some(eps) = &mr.model.epsilon {
        report.push("epsilon", eps.to_string());
    }
    for row in &mr.rows {
        report.push(
            format!("length {}", row.length),
            format!("computed {} predicted {}", row.computed, row.predicted),
        );
    }
    let dims_ok = mr.rows.iter().all(|r| r.computed == r.predicted);
    report.check("dimension table matches", dims_ok);
    for (label, ok) in &mr.generator_checks {
        report.check(label.clone(), *ok);
    }
    for (label, ok) in &mr.relation_checks {
        report.check(label.clone(), *ok);
    }
    if let Some(ok) = mr.x_power_excluded {
        report.check("pure x-powers excluded", ok);
    }
    report.check("consistent", mr.consistent);
    Ok(report)
}

pub fn cmd_resolution_check(fp: &FamilyParams, max_length: usize) -> Result<Report, Error> {
    if fp.family != Family::LambdaMN {
        return Err(Error::new("resolution-check requires the torus family"));
    }
    const PATH_CAP: usize = 200_000;
    let mut report = Report::new("resolution-check");
    report.push("m", fp.m.to_string());
    report.push("n", fp.n.to_string());
    let alg = Algebra::new(build_presentation(fp)?)?;
    let res = Resolution::new(fp, &alg)?;
    for l in 1..=max_length {
        report.check(format!("d^2 = 0 at degree {l}"), res.d_squared_zero(l));
    }
    for l in 1..=max_length {
        let ok = res.labels(l).into_iter().all(|g| {
            res.right_recursion_check(l, g.p as i64, g.i as i64, g.j as i64)
        });
        report.check(format!("right recursion at degree {l}"), ok);
    }
    for l in 2..=max_length.min(5) {
        match res.span_matches_oracle(l, PATH_CAP) {
            Ok(ok) => report.check(format!("generator span at degree {l}"), ok),
            Err(_) => report.push(
                format!("generator span at degree {l}"),
                "skipped (size cap)".to_string(),
            ),
        }
    }
    for l in 1..=max_length {
        report.check(format!("minimality at degree {l}"), res.minimality_check(l));
    }
    for l in 0..=max_length.min(3) {
        report.check(format!("exactness at degree {l}"), res.exactness_check(l)?);
    }
    Ok(report)
}
