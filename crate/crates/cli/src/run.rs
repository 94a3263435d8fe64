//! Query dispatch and report rendering.

use num_rational::Rational64;
use serde_json::{json, Value};

use vogan_core::char_calculus::{
    distinguished, hermitian_psi_change_check, metaplectic_conjugate, metaplectic_eta_bracket,
    metaplectic_psi_prop_check, pure_inner_form_of, Case, CharacterOnA, ConsistencyReport,
};
use vogan_core::classifier::{central_sign, classify, unramified_classify, GroupKind, UnramifiedRep};
use vogan_core::component_groups::{component_group, ComponentGroup};
use vogan_core::field_model::{LocalFieldModel, QuadraticCharacter};
use vogan_core::global_packets::{coherence, GlobalCharacterChoice, GlobalParameter, Mode};
use vogan_core::rep_algebra::{validate_epsilon, AtomSet, Duality, EpsilonTable};
use vogan_core::{Error, Result, Sign};

use crate::document::Query;
use crate::load::{parse_sign, Workspace};

/// The outcome of one query: text lines and the same content as JSON.
#[derive(Debug, Clone)]
pub struct Report {
    pub kind: &'static str,
    pub target: String,
    pub lines: Vec<String>,
    pub value: Value,
    /// The query ran but found the data at fault (axiom violations, inconsistencies).
    pub failed: bool,
}

impl Report {
    fn new(query: &Query) -> Report {
        Report { kind: query.kind(), target: query.target(), lines: Vec::new(), value: json!({}), failed: false }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    /// Overrides the mode of multiplicity queries.
    pub mode: Option<Mode>,
}

pub fn parse_mode(s: &str) -> Result<Mode> {
    match s {
        "linear" => Ok(Mode::Linear),
        "metaplectic" => Ok(Mode::Metaplectic),
        other => Err(Error::Parse(format!("unknown mode {other:?}"))),
    }
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Linear => "linear",
        Mode::Metaplectic => "metaplectic",
    }
}

fn signs_vec(values: &[Sign]) -> Vec<String> {
    values.iter().map(Sign::to_string).collect()
}

fn render_signs(values: &[Sign]) -> String {
    format!("[{}]", signs_vec(values).join(", "))
}

/// The square class `d` with `chi = (d, -)`.
fn character_label(field: &LocalFieldModel, chi: QuadraticCharacter) -> String {
    let classes = field.classes();
    classes
        .elements()
        .find(|&d| classes.hilbert_character(d) == chi)
        .map(|d| classes.format(d))
        .unwrap_or_else(|| format!("functional {:#b}", chi.functional()))
}

/// Names of the canonical basis of the group's domain, in declaration order.
fn basis_names(group: &ComponentGroup) -> Vec<String> {
    group
        .subgroup_basis()
        .vectors()
        .iter()
        .map(|&v| group.render_element(vogan_core::component_groups::ComponentElement(v)))
        .collect()
}

fn character_value(chi: &CharacterOnA) -> Value {
    json!({ "basis": basis_names(chi.group()), "values": signs_vec(chi.basis_values()) })
}

fn require_valid(id: &str, t: &EpsilonTable, atoms: &AtomSet) -> Result<()> {
    let report = validate_epsilon(t, atoms);
    if report.is_valid() {
        return Ok(());
    }
    let codes: Vec<&str> = report.axioms().into_iter().map(|a| a.code()).collect();
    Err(Error::Validation(format!("table {id:?} fails {}", codes.join(", "))))
}

fn consistency_lines(r: &mut Report, group: &ComponentGroup, c: &ConsistencyReport) {
    r.line(format!("checked: {}", c.checked));
    r.line(format!("mismatches: {}", c.mismatches.len()));
    for m in &c.mismatches {
        r.line(format!("  at {}: expected {}, got {}", group.render_element(m.element), m.expected, m.actual));
    }
    r.line(if c.is_consistent() { "consistent" } else { "inconsistent" });
    r.failed = !c.is_consistent();
    let mismatches: Vec<Value> = c
        .mismatches
        .iter()
        .map(|m| {
            json!({
                "element": group.render_element(m.element),
                "expected": m.expected.to_string(),
                "actual": m.actual.to_string(),
            })
        })
        .collect();
    r.value = json!({ "checked": c.checked, "consistent": c.is_consistent(), "mismatches": mismatches });
}

fn trivial_line(atoms: &AtomSet) -> Result<String> {
    atoms
        .iter()
        .find(|a| a.dim == 1 && a.duality() == Some(Duality::Orthogonal) && a.det.is_some_and(|d| d.is_trivial()))
        .map(|a| a.id.clone())
        .ok_or_else(|| Error::IncompleteTable("no trivial 1-dimensional orthogonal atom".into()))
}

fn local_choice(phi: &GlobalParameter, eta: &[(String, Vec<String>)]) -> Result<GlobalCharacterChoice> {
    let mut choice = GlobalCharacterChoice::default();
    for (v, values) in eta {
        let (_, group) = phi.local_group(v)?;
        let values = values.iter().map(|s| parse_sign(s)).collect::<Result<Vec<_>>>()?;
        if choice.local.insert(v.clone(), CharacterOnA::from_basis_values(group.clone(), values)?).is_some() {
            return Err(Error::Validation(format!("place {v} listed twice")));
        }
    }
    Ok(choice)
}

fn total_choices(phi: &GlobalParameter) -> Result<u64> {
    let mut bits = 0;
    for p in phi.places() {
        bits += phi.local_group(&p.label)?.1.rank();
    }
    Ok(1u64.checked_shl(bits as u32).unwrap_or(u64::MAX))
}

pub fn run_query(ws: &Workspace, query: &Query, opts: Options) -> Result<Report> {
    let mut r = Report::new(query);
    match query {
        Query::Classify { parameter, metaplectic, disc, table } => {
            let (rep, atoms) = ws.parameter(parameter)?;
            let field = atoms.field();
            let disc = disc.as_deref().map(|d| field.classes().parse(d)).transpose()?;
            let case = classify(rep, field, atoms, *metaplectic, disc)?;
            r.line(format!("group: {case}"));
            let mut value = json!({ "group": case.name(), "dim": rep.dim(atoms)? });
            if let Some(det) = case.disc {
                let label = character_label(field, det);
                r.line(format!("discriminant: {label}"));
                value["discriminant"] = json!(label);
            }
            if case.kind == GroupKind::SoEven {
                r.line(format!("ambiguous: {}", if case.ambiguous { "yes" } else { "no" }));
                value["ambiguous"] = json!(case.ambiguous);
            }
            if let Some(tid) = table {
                ws.same_atoms(tid, parameter)?;
                let (t, _) = ws.table(tid)?;
                require_valid(tid, t, atoms)?;
                let s = central_sign(rep, &case, t, atoms)?;
                r.line(format!("central sign: {s}"));
                value["central_sign"] = json!(s.to_string());
            }
            r.value = value;
        }
        Query::ComponentGroup { parameter, plus } => {
            let (rep, atoms) = ws.parameter(parameter)?;
            let group = component_group(rep, atoms, *plus)?;
            let basis: Vec<String> = group
                .basis()
                .iter()
                .map(|b| format!("{} (dim {}, multiplicity {})", b.atom, b.dim, b.multiplicity))
                .collect();
            let canonical = basis_names(&group);
            let central = group.render_element(group.central_element());
            r.line(format!("group: {group}"));
            r.line(format!("basis: {}", if basis.is_empty() { "none".into() } else { basis.join(", ") }));
            if group.is_restricted() {
                r.line(format!("subgroup basis: {}", canonical.join(", ")));
            }
            r.line(format!("central element: {central}"));
            r.value = json!({
                "group": group.to_string(),
                "rank": group.subgroup_rank(),
                "basis": group.basis().iter().map(|b| json!({
                    "atom": b.atom, "dim": b.dim, "multiplicity": b.multiplicity,
                })).collect::<Vec<_>>(),
                "subgroup_basis": canonical,
                "central_element": central,
            });
        }
        Query::Distinguished { case } => {
            let bound = ws.case(case)?;
            let (t, atoms) = ws.table(&bound.table)?;
            require_valid(&bound.table, t, atoms)?;
            let (m, _) = ws.parameter(&bound.m)?;
            let (n, _) = ws.parameter(&bound.n)?;
            let chi = distinguished(&bound.desc, m, n, t, atoms)?;
            r.line(format!("case: {}", bound.desc.case));
            r.line(format!("basis: {}", basis_names(chi.group()).join(", ")));
            r.line(format!("character: {}", chi.render()));
            let mut value = json!({ "case": bound.desc.case.name(), "character": character_value(&chi) });
            if let Ok(form) = pure_inner_form_of(&chi, atoms.field()) {
                r.line(format!("inner form: {form}"));
                value["inner_form"] = json!(form.to_string());
            }
            r.value = value;
        }
        Query::CheckPsiConsistency { case, class } => {
            let bound = ws.case(case)?;
            let (t, atoms) = ws.table(&bound.table)?;
            require_valid(&bound.table, t, atoms)?;
            let (m, _) = ws.parameter(&bound.m)?;
            let (n, _) = ws.parameter(&bound.n)?;
            let c = atoms.field().classes().parse(class)?;
            let (gm, gn, report) = match bound.desc.case {
                Case::HermitianBessel => {
                    let psi0 = bound.desc.psi0.as_ref().unwrap_or(&bound.desc.psi);
                    let rep = hermitian_psi_change_check(m, n, psi0, c, t, atoms)?;
                    (component_group(m, atoms, false)?, component_group(n, atoms, false)?, rep)
                }
                Case::SymplecticMetaplectic => {
                    let unit = match &bound.desc.unit {
                        Some(u) => u.clone(),
                        None => trivial_line(atoms)?,
                    };
                    let rep = metaplectic_psi_prop_check(m, n, c, &unit, t, atoms)?;
                    (component_group(m, atoms, false)?, component_group(n, atoms, true)?, rep)
                }
                other => return Err(Error::Domain(format!("no consistency check for the {other} case"))),
            };
            consistency_lines(&mut r, &gm.product(&gn)?, &report);
        }
        Query::CheckAxioms { table } => {
            let (t, atoms) = ws.table(table)?;
            let report = validate_epsilon(t, atoms);
            for v in &report.violations {
                r.line(format!("{}: {}", v.axiom.code(), v.detail));
            }
            r.line(if report.is_valid() { "valid" } else { "invalid" });
            r.failed = !report.is_valid();
            let axioms: Vec<&str> = report.axioms().into_iter().map(|a| a.code()).collect();
            r.value = json!({
                "valid": report.is_valid(),
                "axioms": axioms,
                "violations": report.violations.iter().map(|v| json!({
                    "axiom": v.axiom.code(), "detail": v.detail,
                })).collect::<Vec<_>>(),
            });
        }
        Query::MetaplecticConjugate { parameter, table, class, character } => {
            let (rep, atoms) = ws.parameter(parameter)?;
            ws.same_atoms(table, parameter)?;
            let (t, _) = ws.table(table)?;
            require_valid(table, t, atoms)?;
            let c = atoms.field().classes().parse(class)?;
            let values = character.iter().map(|s| parse_sign(s)).collect::<Result<Vec<_>>>()?;
            let chi = CharacterOnA::from_basis_values(component_group(rep, atoms, false)?, values)?;
            let bracket = metaplectic_eta_bracket(rep, c, t, atoms)?;
            let (twisted, chi_c) = metaplectic_conjugate(rep, &chi, c, t, atoms)?;
            r.line(format!("eta[c]: {}", bracket.render()));
            r.line(format!("parameter: {}", twisted.render()));
            r.line(format!("basis: {}", basis_names(chi_c.group()).join(", ")));
            r.line(format!("character: {}", chi_c.render()));
            r.value = json!({
                "eta_c": character_value(&bracket),
                "parameter": twisted.render(),
                "character": character_value(&chi_c),
            });
        }
        Query::GlobalMultiplicity { global, mode, eta } => {
            let phi = ws.global(global)?;
            let mode = match opts.mode {
                Some(m) => m,
                None => mode.as_deref().map(parse_mode).transpose()?.unwrap_or(Mode::Linear),
            };
            let choice = local_choice(phi, eta)?;
            let pulled = phi.pullback(&choice)?;
            let mult = phi.multiplicity_in(mode, &choice)?;
            r.line(format!("mode: {}", mode_name(mode)));
            r.line(format!("pullback: {}", render_signs(&pulled)));
            r.line(format!("multiplicity: {mult}"));
            r.value = json!({ "mode": mode_name(mode), "pullback": signs_vec(&pulled), "multiplicity": mult });
        }
        Query::EnumerateAutomorphic { global, mode } => {
            let phi = ws.global(global)?;
            let mode = match opts.mode {
                Some(m) => m,
                None => mode.as_deref().map(parse_mode).transpose()?.unwrap_or(Mode::Linear),
            };
            let found = phi.enumerate_automorphic(mode)?;
            let labels: Vec<String> = found.iter().map(|e| e.label(phi.places())).collect();
            let total = total_choices(phi)?;
            let shown: Vec<String> = labels.iter().map(|l| if l.is_empty() { "(trivial)".into() } else { l.clone() }).collect();
            r.line(format!("mode: {}", mode_name(mode)));
            r.line(format!("labels: {}", if shown.is_empty() { "none".into() } else { shown.join(" ") }));
            r.line(format!("count: {} of {total}", labels.len()));
            r.value = json!({ "mode": mode_name(mode), "labels": labels, "count": labels.len(), "total": total });
        }
        Query::Coherence { signs } => {
            let parsed = signs.iter().map(|(v, s)| Ok((v.as_str(), parse_sign(s)?))).collect::<Result<Vec<_>>>()?;
            let verdict = coherence(parsed);
            r.line(format!("product: {}", verdict.product));
            r.line(format!("verdict: {verdict}"));
            r.value = json!({
                "product": verdict.product.to_string(),
                "coherent": verdict.coherent,
                "derivative_case": verdict.derivative_case,
            });
        }
        Query::Unramified { field, pairs, m, n } => {
            let k = ws.field(field)?;
            let pairs = pairs
                .iter()
                .map(|s| s.parse::<Rational64>().map_err(|e| Error::Parse(format!("eigenvalue {s:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            let u = UnramifiedRep { pairs, m: *m, n: *n };
            let options = unramified_classify(&u, k)?;
            let mut out = Vec::new();
            for (d, group) in &options {
                let basis = basis_names(group);
                r.line(format!("{d}: {group} (basis {})", if basis.is_empty() { "none".into() } else { basis.join(", ") }));
                out.push(json!({ "duality": d.name(), "group": group.to_string(), "basis": basis }));
            }
            if options.is_empty() {
                r.line("no duality");
            }
            r.value = json!({ "options": out });
        }
    }
    Ok(r)
}

/// Queries for `kind` built from the document's declarations, for `--query` on a document
/// that lists none of that kind.
pub fn default_queries(ws: &Workspace, kind: &str) -> Result<Vec<Query>> {
    let none = || Error::Validation(format!("the document has no {kind} query and none can be derived"));
    let qs: Vec<Query> = match kind {
        "classify" => ws
            .ids("local_parameters")
            .iter()
            .map(|p| Query::Classify { parameter: p.clone(), metaplectic: false, disc: None, table: None })
            .collect(),
        "component-group" => ws
            .ids("local_parameters")
            .iter()
            .map(|p| Query::ComponentGroup { parameter: p.clone(), plus: false })
            .collect(),
        "distinguished" => ws.ids("cases").iter().map(|c| Query::Distinguished { case: c.clone() }).collect(),
        "check-axioms" => ws.ids("epsilon_tables").iter().map(|t| Query::CheckAxioms { table: t.clone() }).collect(),
        "global-multiplicity" => ws
            .ids("global_parameters")
            .iter()
            .map(|g| Query::GlobalMultiplicity { global: g.clone(), mode: None, eta: Vec::new() })
            .collect(),
        "enumerate-automorphic" => ws
            .ids("global_parameters")
            .iter()
            .map(|g| Query::EnumerateAutomorphic { global: g.clone(), mode: None })
            .collect(),
        _ => Vec::new(),
    };
    if qs.is_empty() {
        return Err(none());
    }
    Ok(qs)
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::Validation(_) => "validation",
        Error::Domain(_) => "domain",
        Error::IncompleteTable(_) => "incomplete-table",
        Error::Classification(_) => "classification",
        Error::UnknownId(_) => "unknown-id",
        Error::Unbounded(_) => "unbounded",
    }
}
