use std::collections::BTreeSet;
use std::fmt;

use super::atom::{Atom, AtomSet, Context, Duality};
use super::epsilon::{EpsilonTable, TwistKey};
use crate::field_model::{PsiClass, QuadraticCharacter, SquareClass};
use crate::{FourthRoot, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// `eps(psi_a) = det(a) eps(psi)`.
    A1,
    /// `eps(X) eps(X^v) = det X(-1)`.
    A2,
    /// Same-sign conjugate-dual products have root number +1.
    A3,
    /// Hyperbolic pairs evaluate to `det(-1)` (selfdual) or 1 (conjugate-dual).
    A4,
    /// Conjugate-dual root numbers square to 1.
    A5,
    /// Twist closure entries and `eps(X(t) (x) Y) = eps(X (x) Y(t))`.
    Twist,
    /// `eps(X) = eps(X (x) C)` for the trivial character `C`.
    Unit,
    /// Entries referring to unknown atoms, foreign contexts or foreign square classes.
    Structure,
}

impl Axiom {
    pub fn code(self) -> &'static str {
        match self {
            Axiom::A1 => "A1",
            Axiom::A2 => "A2",
            Axiom::A3 => "A3",
            Axiom::A4 => "A4",
            Axiom::A5 => "A5",
            Axiom::Twist => "twist",
            Axiom::Unit => "unit",
            Axiom::Structure => "structure",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn axioms(&self) -> BTreeSet<Axiom> {
        self.violations.iter().map(|v| v.axiom).collect()
    }

    fn push(&mut self, axiom: Axiom, detail: String) {
        self.violations.push(Violation { axiom, detail });
    }
}

struct Checker<'a> {
    t: &'a EpsilonTable,
    atoms: &'a AtomSet,
    report: ValidationReport,
}

impl<'a> Checker<'a> {
    fn hyperbolic_value(&self, x: &str, y: &str) -> Option<FourthRoot> {
        match self.t.context() {
            Context::Selfdual => self.atoms.tensor_det_at_minus_one(x, y).ok().map(FourthRoot::from),
            Context::Conjugate => Some(FourthRoot::ONE),
        }
    }

    fn hyperbolic_single(&self, x: &str) -> Option<FourthRoot> {
        match self.t.context() {
            Context::Selfdual => self.atoms.det_at_minus_one(x).ok().map(FourthRoot::from),
            Context::Conjugate => Some(FourthRoot::ONE),
        }
    }

    fn psi_name(&self, psi: &PsiClass) -> String {
        psi.render(self.atoms.field().classes())
    }

    fn known(&mut self, id: &str, what: &str) -> Option<&'a Atom> {
        match self.atoms.get(id) {
            Ok(a) if a.context() == self.t.context() => Some(a),
            Ok(a) => {
                self.report.push(
                    Axiom::Structure,
                    format!("{what} uses the {} atom {id} in a {} table", a.context(), self.t.context()),
                );
                None
            }
            Err(_) => {
                self.report.push(Axiom::Structure, format!("{what} uses the unknown atom {id}"));
                None
            }
        }
    }

    fn check_pairs(&mut self) {
        let entries: Vec<(String, String, PsiClass, FourthRoot)> =
            self.t.entries().map(|(a, b, p, v)| (a.into(), b.into(), p.clone(), v)).collect();
        let classes = self.atoms.field().classes();
        let mut first_of_group: Option<(String, String, PsiClass, FourthRoot)> = None;
        for (a, b, psi, v) in &entries {
            let what = format!("entry ({a}, {b}, {})", self.psi_name(psi));
            let (Some(x), Some(y)) = (self.known(a, &what), self.known(b, &what)) else {
                continue;
            };
            if !classes.contains(psi.shift) {
                self.report.push(Axiom::Structure, format!("{what}: shift outside the square-class group"));
                continue;
            }

            // A1 against the first entry with the same atoms and base.
            match &first_of_group {
                Some((fa, fb, fp, fv)) if fa == a && fb == b && fp.base == psi.base => {
                    if let Ok(det) = self.atoms.tensor_det(a, b) {
                        let expected = *fv * det.value(fp.shift + psi.shift);
                        if expected != *v {
                            self.report.push(
                                Axiom::A1,
                                format!("{what} is {v}, but the translate of {} gives {expected}", self.psi_name(fp)),
                            );
                        }
                    }
                }
                _ => first_of_group = Some((a.clone(), b.clone(), psi.clone(), *v)),
            }

            match (x.duality(), y.duality()) {
                (Some(dx), Some(dy)) => self.check_dual_pair(&what, a, b, dx, dy, *v),
                (None, None) => {
                    let (pa, pb) = (x.partner().unwrap(), y.partner().unwrap());
                    let (lo, hi) = if pa <= pb { (pa, pb) } else { (pb, pa) };
                    if (lo, hi) < (a.as_str(), b.as_str()) {
                        continue;
                    }
                    let Some(w) = self.t.pair_entry(pa, pb, psi) else { continue };
                    if let Some(expected) = self.hyperbolic_value(a, b) {
                        if *v * w != expected {
                            self.report.push(
                                Axiom::A2,
                                format!("{what} times its dual entry ({pa}, {pb}) is {}, expected {expected}", *v * w),
                            );
                        }
                    }
                }
                (None, Some(_)) | (Some(_), None) => {
                    let (p, other) = if x.duality().is_none() { (x, b) } else { (y, a) };
                    let q = p.partner().unwrap();
                    if q < p.id.as_str() {
                        continue;
                    }
                    let Some(w) = self.t.pair_entry(q, other, psi) else { continue };
                    if let Some(expected) = self.hyperbolic_value(&p.id, other) {
                        if *v * w != expected {
                            self.report.push(
                                Axiom::A4,
                                format!(
                                    "({} + {q}) (x) {other} at {} evaluates to {}, expected {expected}",
                                    p.id,
                                    self.psi_name(psi),
                                    *v * w
                                ),
                            );
                        }
                    }
                }
            }
        }
    }

    fn check_dual_pair(&mut self, what: &str, a: &str, b: &str, dx: Duality, dy: Duality, v: FourthRoot) {
        match self.t.context() {
            Context::Selfdual => {
                if let Ok(s) = self.atoms.tensor_det_at_minus_one(a, b) {
                    if v.square() != FourthRoot::from(s) {
                        self.report.push(Axiom::A2, format!("{what} squares to {}, but det(-1) = {s}", v.square()));
                    }
                }
            }
            Context::Conjugate => {
                if dx.sign() == dy.sign() {
                    if v != FourthRoot::ONE {
                        self.report.push(Axiom::A3, format!("{what} is a conjugate-orthogonal product with root number {v}"));
                    }
                } else if v.square() != FourthRoot::ONE {
                    self.report.push(Axiom::A5, format!("{what} is {v}, which does not square to 1"));
                }
            }
        }
    }

    fn check_self_values(&mut self) {
        let classes = self.atoms.field().classes();
        for atom in self.atoms.iter().filter(|a| a.context() == self.t.context()) {
            let mut first: Option<(&PsiClass, FourthRoot)> = None;
            for (psi, &v) in &atom.eps_self {
                let what = format!("eps({}, {})", atom.id, self.psi_name(psi));
                if !classes.contains(psi.shift) {
                    self.report.push(Axiom::Structure, format!("{what}: shift outside the square-class group"));
                    continue;
                }
                match first {
                    Some((fp, fv)) if fp.base == psi.base => {
                        if let Some(det) = atom.det {
                            let expected = fv * det.value(fp.shift + psi.shift);
                            if expected != v {
                                self.report.push(Axiom::A1, format!("{what} is {v}, the translate rule gives {expected}"));
                            }
                        }
                    }
                    _ => first = Some((psi, v)),
                }
                match atom.duality() {
                    Some(d) => match self.t.context() {
                        Context::Selfdual => {
                            if let Ok(s) = self.atoms.det_at_minus_one(&atom.id) {
                                if v.square() != FourthRoot::from(s) {
                                    self.report.push(Axiom::A2, format!("{what} squares to {}, but det(-1) = {s}", v.square()));
                                }
                            }
                        }
                        Context::Conjugate => {
                            if d == Duality::ConjOrthogonal && v != FourthRoot::ONE {
                                self.report.push(Axiom::A3, format!("{what} is conjugate-orthogonal with root number {v}"));
                            } else if v.square() != FourthRoot::ONE {
                                self.report.push(Axiom::A5, format!("{what} is {v}, which does not square to 1"));
                            }
                        }
                    },
                    None => {
                        let q = atom.partner().unwrap();
                        if q < atom.id.as_str() {
                            continue;
                        }
                        let Ok(partner) = self.atoms.get(q) else { continue };
                        let Some(&w) = partner.eps_self.get(psi) else { continue };
                        if let Some(expected) = self.hyperbolic_single(&atom.id) {
                            if v * w != expected {
                                self.report.push(
                                    Axiom::A4,
                                    format!("eps({} + {q}, {}) is {}, expected {expected}", atom.id, self.psi_name(psi), v * w),
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    fn check_twists(&mut self) {
        let twists: Vec<(String, TwistKey, String)> =
            self.t.twists().map(|(a, k, i)| (a.into(), k.clone(), i.into())).collect();
        for (x, by, y) in &twists {
            let what = format!("twist of {x} by {by}");
            let (Some(ax), Some(ay)) = (self.known(x, &what), self.known(y, &what)) else {
                continue;
            };
            if ax.dim != ay.dim {
                self.report.push(Axiom::Twist, format!("{what} changes the dimension"));
                continue;
            }
            let (sign, twist_det): (Sign, Option<QuadraticCharacter>) = match by {
                TwistKey::Class(c) => {
                    if self.t.context() != Context::Selfdual || !self.atoms.field().classes().contains(*c) {
                        self.report.push(Axiom::Structure, format!("{what}: class twists need a selfdual table and a valid class"));
                        continue;
                    }
                    (Sign::Plus, Some(self.atoms.field().classes().hilbert_character(*c)))
                }
                TwistKey::Character(c) => {
                    let chi = self.atoms.get(c).ok().filter(|a| a.dim == 1 && a.context() == Context::Conjugate);
                    let Some(d) = chi.and_then(|a| a.duality()) else {
                        self.report.push(Axiom::Structure, format!("{what}: {c} is not a 1-dimensional conjugate-dual atom"));
                        continue;
                    };
                    (d.sign(), chi.and_then(|a| a.det))
                }
            };
            match (ax.duality(), ay.duality()) {
                (Some(dx), Some(dy)) => {
                    if dx.times(sign) != dy {
                        self.report.push(Axiom::Twist, format!("{what} is {dy}, expected {}", dx.times(sign)));
                    }
                }
                (None, None) => {}
                _ => self.report.push(Axiom::Twist, format!("{what} mixes dual and non-dual atoms")),
            }
            if let (Some(dx), Some(dy), Some(td)) = (ax.det, ay.det, twist_det) {
                if dx * td.pow(ax.dim) != dy {
                    self.report.push(Axiom::Twist, format!("{what} has the wrong determinant"));
                }
            }
            // Class twists compose as a group action.
            if let TwistKey::Class(c) = by {
                for (x2, by2, z) in &twists {
                    let TwistKey::Class(d) = by2 else { continue };
                    if x2 != y {
                        continue;
                    }
                    let sum = *c + *d;
                    let expected = if sum == SquareClass::IDENTITY {
                        Some(x.as_str())
                    } else {
                        self.t.twist_image(x, &TwistKey::Class(sum))
                    };
                    if let Some(w) = expected {
                        if w != z {
                            self.report.push(Axiom::Twist, format!("twisting {x} twice gives {z}, but the combined twist gives {w}"));
                        }
                    }
                }
            }
        }

        // eps(X(t) (x) Y) = eps(X (x) Y(t)) whenever both sides are known.
        let psi = self.t.base_psi().clone();
        let keys: BTreeSet<TwistKey> = twists.iter().map(|(_, k, _)| k.clone()).collect();
        for by in &keys {
            let twisted: Vec<(&String, &String)> =
                twists.iter().filter(|(_, k, _)| k == by).map(|(a, _, i)| (a, i)).collect();
            for (i, (x, xt)) in twisted.iter().enumerate() {
                for (y, yt) in &twisted[i..] {
                    let lhs = self.t.pair_value(xt, y, &psi, self.atoms);
                    let rhs = self.t.pair_value(x, yt, &psi, self.atoms);
                    if let (Ok(l), Ok(r)) = (lhs, rhs) {
                        if l != r {
                            self.report.push(
                                Axiom::Twist,
                                format!("eps({xt} (x) {y}) = {l} but eps({x} (x) {yt}) = {r} under {by}"),
                            );
                        }
                    }
                }
            }
        }
    }

    fn check_units(&mut self) {
        let ctx = self.t.context();
        let units: Vec<&Atom> = self
            .atoms
            .iter()
            .filter(|a| {
                a.dim == 1
                    && a.det.is_some_and(|d| d.is_trivial())
                    && a.duality() == Some(Duality::from_parts(ctx, Sign::Plus))
            })
            .collect();
        for c in units {
            for atom in self.atoms.iter().filter(|a| a.context() == ctx) {
                for (psi, &v) in &atom.eps_self {
                    if let Ok(w) = self.t.pair_value(&atom.id, &c.id, psi, self.atoms) {
                        if v != w {
                            self.report.push(
                                Axiom::Unit,
                                format!("eps({}) = {v} but eps({} (x) {}) = {w} at {}", atom.id, atom.id, c.id, self.psi_name(psi)),
                            );
                        }
                    }
                }
            }
        }
    }
}

/// Every axiom violation of a table relative to an atom set.
pub fn validate_epsilon(t: &EpsilonTable, atoms: &AtomSet) -> ValidationReport {
    let mut c = Checker { t, atoms, report: ValidationReport::default() };
    c.check_pairs();
    c.check_self_values();
    c.check_twists();
    c.check_units();
    c.report
}
