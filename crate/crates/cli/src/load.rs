//! Turns a parsed document into engine objects, resolving ids in declaration order.

use std::collections::{BTreeMap, HashMap};

use vogan_core::char_calculus::{Case, CaseDescriptor};
use vogan_core::field_model::{LocalFieldModel, PsiClass, QuadraticCharacter, Ramification, SquareClass, SquareClassGroup};
use vogan_core::global_packets::{GlobalAtom, GlobalParameter, Place};
use vogan_core::rep_algebra::{Atom, AtomSet, Context, Duality, EpsilonTable, FormalRep, TwistKey};
use vogan_core::{Error, FourthRoot, Result, Sign};

use crate::document::{AtomDecl, Document, FieldKindDecl, FieldModelDecl, Query};

pub struct Table {
    pub atoms: String,
    pub table: EpsilonTable,
}

pub struct Parameter {
    pub atoms: String,
    pub rep: FormalRep,
}

pub struct BoundCase {
    pub desc: CaseDescriptor,
    pub table: String,
    pub m: String,
    pub n: String,
}

/// Every object a document declares, keyed by id.
#[derive(Default)]
pub struct Workspace {
    pub fields: HashMap<String, LocalFieldModel>,
    pub atom_sets: HashMap<String, AtomSet>,
    pub tables: HashMap<String, Table>,
    pub parameters: HashMap<String, Parameter>,
    pub cases: HashMap<String, BoundCase>,
    pub globals: HashMap<String, GlobalParameter>,
    /// Ids of each section in declaration order.
    pub order: BTreeMap<&'static str, Vec<String>>,
    pub queries: Vec<Query>,
}

fn lookup<'a, T>(map: &'a HashMap<String, T>, id: &str, what: &str) -> Result<&'a T> {
    map.get(id).ok_or_else(|| Error::UnknownId(format!("{what} {id:?}")))
}

fn fresh<T>(map: &HashMap<String, T>, id: &str, what: &str) -> Result<()> {
    if map.contains_key(id) {
        return Err(Error::Validation(format!("{what} {id:?} declared twice")));
    }
    Ok(())
}

pub fn parse_sign(s: &str) -> Result<Sign> {
    s.parse()
}

fn parse_context(s: &str) -> Result<Context> {
    match s {
        "selfdual" => Ok(Context::Selfdual),
        "conjugate-dual" => Ok(Context::Conjugate),
        other => Err(Error::Parse(format!("unknown context {other:?}"))),
    }
}

fn field_model(decl: &FieldModelDecl) -> Result<LocalFieldModel> {
    let id = &decl.id;
    let base = match decl.kind {
        FieldKindDecl::Padic => {
            let q = decl.q_mod_4.ok_or_else(|| Error::Validation(format!("field {id:?}: q_mod_4 is required")))?;
            LocalFieldModel::padic_odd(q)?
        }
        FieldKindDecl::Real => LocalFieldModel::real(),
        FieldKindDecl::Complex => LocalFieldModel::complex(),
        FieldKindDecl::Custom => {
            let missing = || Error::Validation(format!("field {id:?}: custom fields need labels, hilbert and minus_one"));
            let labels = decl.labels.clone().ok_or_else(missing)?;
            let rows = decl.hilbert.as_ref().ok_or_else(missing)?;
            let mut gram = Vec::new();
            for row in rows {
                let mut bits = 0u64;
                for (j, s) in row.iter().enumerate() {
                    if parse_sign(s)?.is_minus() {
                        bits |= 1 << j;
                    }
                }
                if row.len() != labels.len() {
                    return Err(Error::Validation(format!("field {id:?}: hilbert rows must have {} entries", labels.len())));
                }
                gram.push(bits);
            }
            let probe = SquareClassGroup::new(labels.clone(), gram.clone(), SquareClass::IDENTITY)?;
            let minus_one = probe.parse(decl.minus_one.as_deref().ok_or_else(missing)?)?;
            LocalFieldModel::custom(SquareClassGroup::new(labels, gram, minus_one)?)
        }
    };
    if decl.kind != FieldKindDecl::Custom && (decl.labels.is_some() || decl.hilbert.is_some() || decl.minus_one.is_some()) {
        return Err(Error::Validation(format!("field {id:?}: labels, hilbert and minus_one are for custom fields")));
    }
    if decl.kind != FieldKindDecl::Padic && decl.q_mod_4.is_some() {
        return Err(Error::Validation(format!("field {id:?}: q_mod_4 is for p-adic fields")));
    }
    let Some(ext) = &decl.extension else { return Ok(base) };
    let ramification = match ext.kind.as_str() {
        "split" => {
            if ext.disc.is_some() {
                return Err(Error::Validation(format!("field {id:?}: a split extension has no discriminant")));
            }
            return Ok(base.split());
        }
        "inert" => Ramification::Inert,
        "ramified" => Ramification::Ramified,
        other => return Err(Error::Parse(format!("field {id:?}: unknown extension kind {other:?}"))),
    };
    match &ext.disc {
        Some(d) => {
            let disc = base.classes().parse(d)?;
            base.with_discriminant(ramification, disc)
        }
        None => base.with_quadratic_extension(ramification),
    }
}

fn character(field: &LocalFieldModel, d: &str) -> Result<QuadraticCharacter> {
    Ok(field.classes().hilbert_character(field.classes().parse(d)?))
}

fn atom(decl: &AtomDecl, field: &LocalFieldModel) -> Result<Atom> {
    let id = &decl.id;
    let mut atom = match (&decl.duality, &decl.context, &decl.partner) {
        (Some(d), None, None) => {
            let duality: Duality = d.parse()?;
            let det = match &decl.det {
                Some(s) => character(field, s)?,
                None => return Err(Error::Validation(format!("atom {id:?}: det is required"))),
            };
            Atom::dual(id.clone(), decl.dim, duality, det)
        }
        (None, Some(c), Some(p)) => {
            let mut a = Atom::non_dual(id.clone(), decl.dim, parse_context(c)?, p.clone());
            if let Some(s) = &decl.det {
                a = a.with_det(character(field, s)?);
            }
            a
        }
        _ => {
            return Err(Error::Validation(format!(
                "atom {id:?}: give either duality, or context and partner"
            )))
        }
    };
    if let Some(s) = &decl.det_at_minus_one {
        atom = atom.with_det_at_minus_one(parse_sign(s)?);
    }
    for e in &decl.eps {
        let psi = PsiClass::parse(&e.psi, field.classes())?;
        if atom.eps_self.contains_key(&psi) {
            return Err(Error::Validation(format!("atom {id:?}: eps at {} given twice", e.psi)));
        }
        atom = atom.with_eps(psi, e.value.parse::<FourthRoot>()?);
    }
    Ok(atom)
}

impl Workspace {
    pub fn load(doc: Document) -> Result<Workspace> {
        let mut ws = Workspace::default();
        for decl in &doc.field_models {
            fresh(&ws.fields, &decl.id, "field model")?;
            ws.fields.insert(decl.id.clone(), field_model(decl)?);
            ws.order.entry("field_models").or_default().push(decl.id.clone());
        }
        for decl in &doc.atoms {
            fresh(&ws.atom_sets, &decl.id, "atom set")?;
            let field = lookup(&ws.fields, &decl.field, "field model")?;
            let atoms = decl.atoms.iter().map(|a| atom(a, field)).collect::<Result<Vec<_>>>()?;
            ws.atom_sets.insert(decl.id.clone(), AtomSet::new(field.clone(), atoms)?);
            ws.order.entry("atoms").or_default().push(decl.id.clone());
        }
        for decl in &doc.epsilon_tables {
            fresh(&ws.tables, &decl.id, "epsilon table")?;
            let atoms = lookup(&ws.atom_sets, &decl.atoms, "atom set")?;
            let classes = atoms.field().classes();
            let base = PsiClass::parse(&decl.psi, classes)?;
            let mut table = EpsilonTable::new(parse_context(&decl.context)?, base.clone());
            for p in &decl.pairs {
                for a in &p.atoms {
                    atoms.get(a)?;
                }
                let psi = match &p.psi {
                    Some(s) => PsiClass::parse(s, classes)?,
                    None => base.clone(),
                };
                let value: FourthRoot = p.value.parse()?;
                if let Some(old) = table.set_pair(&p.atoms[0], &p.atoms[1], &psi, value) {
                    if old != value {
                        return Err(Error::Validation(format!(
                            "table {:?}: conflicting values for ({}, {})",
                            decl.id, p.atoms[0], p.atoms[1]
                        )));
                    }
                }
            }
            for t in &decl.twists {
                atoms.get(&t.atom)?;
                atoms.get(&t.image)?;
                let by = match (&t.class, &t.character) {
                    (Some(c), None) => TwistKey::Class(classes.parse(c)?),
                    (None, Some(id)) => {
                        atoms.get(id)?;
                        TwistKey::Character(id.clone())
                    }
                    _ => {
                        return Err(Error::Validation(format!(
                            "table {:?}: twist of {} needs exactly one of class and character",
                            decl.id, t.atom
                        )))
                    }
                };
                table.set_twist(&t.atom, by, &t.image);
            }
            ws.tables.insert(decl.id.clone(), Table { atoms: decl.atoms.clone(), table });
            ws.order.entry("epsilon_tables").or_default().push(decl.id.clone());
        }
        for decl in &doc.local_parameters {
            fresh(&ws.parameters, &decl.id, "local parameter")?;
            let atoms = lookup(&ws.atom_sets, &decl.atoms, "atom set")?;
            let mut rep = FormalRep::new(Some(decl.duality.parse()?));
            for (id, mult) in &decl.summands {
                atoms.get(id)?;
                if rep.multiplicity(id) > 0 {
                    return Err(Error::Validation(format!("parameter {:?}: {id} listed twice", decl.id)));
                }
                rep.add(id, *mult);
            }
            rep.check(atoms)?;
            ws.parameters.insert(decl.id.clone(), Parameter { atoms: decl.atoms.clone(), rep });
            ws.order.entry("local_parameters").or_default().push(decl.id.clone());
        }
        for decl in &doc.cases {
            fresh(&ws.cases, &decl.id, "case")?;
            let case: Case = decl.case.parse()?;
            let table = lookup(&ws.tables, &decl.table, "epsilon table")?;
            let atoms = &ws.atom_sets[&table.atoms];
            for p in [&decl.m, &decl.n] {
                if lookup(&ws.parameters, p, "local parameter")?.atoms != table.atoms {
                    return Err(Error::Validation(format!(
                        "case {:?}: parameter {p:?} is not over the table's atoms",
                        decl.id
                    )));
                }
            }
            let classes = atoms.field().classes();
            let psi = match &decl.psi {
                Some(s) => PsiClass::parse(s, classes)?,
                None => table.table.base_psi().clone(),
            };
            let mut desc = CaseDescriptor::new(case, psi);
            desc.psi0 = decl.psi0.as_deref().map(|s| PsiClass::parse(s, classes)).transpose()?;
            for id in decl.mu.iter().chain(&decl.unit) {
                atoms.get(id)?;
            }
            desc.mu = decl.mu.clone();
            desc.unit = decl.unit.clone();
            desc.check()?;
            ws.cases.insert(
                decl.id.clone(),
                BoundCase { desc, table: decl.table.clone(), m: decl.m.clone(), n: decl.n.clone() },
            );
            ws.order.entry("cases").or_default().push(decl.id.clone());
        }
        for decl in &doc.global_parameters {
            fresh(&ws.globals, &decl.id, "global parameter")?;
            let mut places = Vec::new();
            for p in &decl.places {
                let atoms = lookup(&ws.atom_sets, &p.atoms, "atom set")?;
                places.push(Place { label: p.label.clone(), atoms: atoms.clone() });
            }
            let mut atoms = Vec::new();
            for a in &decl.atoms {
                let mut local = BTreeMap::new();
                for (v, param) in &a.local {
                    let place = decl
                        .places
                        .iter()
                        .find(|p| &p.label == v)
                        .ok_or_else(|| Error::UnknownId(format!("place {v:?} of global atom {:?}", a.id)))?;
                    let param = lookup(&ws.parameters, param, "local parameter")?;
                    if param.atoms != place.atoms {
                        return Err(Error::Validation(format!(
                            "global atom {:?} at {v}: parameter is not over the place's atoms",
                            a.id
                        )));
                    }
                    if local.insert(v.clone(), param.rep.clone()).is_some() {
                        return Err(Error::Validation(format!("global atom {:?}: place {v} listed twice", a.id)));
                    }
                }
                atoms.push(GlobalAtom {
                    id: a.id.clone(),
                    dim: a.dim,
                    sign: parse_sign(&a.sign)?,
                    eps_half: parse_sign(&a.eps_half)?,
                    local,
                });
            }
            ws.globals.insert(decl.id.clone(), GlobalParameter::new(atoms, places)?);
            ws.order.entry("global_parameters").or_default().push(decl.id.clone());
        }
        ws.queries = doc.queries;
        Ok(ws)
    }

    pub fn ids(&self, section: &str) -> &[String] {
        self.order.get(section).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn table(&self, id: &str) -> Result<(&EpsilonTable, &AtomSet)> {
        let t = lookup(&self.tables, id, "epsilon table")?;
        Ok((&t.table, &self.atom_sets[&t.atoms]))
    }

    pub fn parameter(&self, id: &str) -> Result<(&FormalRep, &AtomSet)> {
        let p = lookup(&self.parameters, id, "local parameter")?;
        Ok((&p.rep, &self.atom_sets[&p.atoms]))
    }

    pub fn same_atoms(&self, table: &str, parameter: &str) -> Result<()> {
        let t = lookup(&self.tables, table, "epsilon table")?;
        let p = lookup(&self.parameters, parameter, "local parameter")?;
        if t.atoms != p.atoms {
            return Err(Error::Validation(format!("table {table:?} is not over the atoms of {parameter:?}")));
        }
        Ok(())
    }

    pub fn case(&self, id: &str) -> Result<&BoundCase> {
        lookup(&self.cases, id, "case")
    }

    pub fn global(&self, id: &str) -> Result<&GlobalParameter> {
        lookup(&self.globals, id, "global parameter")
    }

    pub fn field(&self, id: &str) -> Result<&LocalFieldModel> {
        lookup(&self.fields, id, "field model")
    }
}
