use std::collections::BTreeMap;
use std::fmt;

use super::atom::{AtomSet, Context, Duality};
use super::formal::FormalRep;
use crate::field_model::{PsiClass, SquareClass};
use crate::{Error, FourthRoot, Result, Sign};

/// What an atom is twisted by: a square class `c` (tensoring with the orthogonal
/// character `C(c)`) or a named 1-dimensional conjugate-dual atom.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TwistKey {
    Class(SquareClass),
    Character(String),
}

impl fmt::Display for TwistKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwistKey::Class(c) => write!(f, "class {:#b}", c.0),
            TwistKey::Character(id) => write!(f, "{id}"),
        }
    }
}

type PairKey = (String, String, PsiClass);

fn key(a: &str, b: &str, psi: &PsiClass) -> PairKey {
    if a <= b {
        (a.to_string(), b.to_string(), psi.clone())
    } else {
        (b.to_string(), a.to_string(), psi.clone())
    }
}

/// Root numbers `eps(X (x) Y, psi)` of atom pairs, plus the twist closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonTable {
    context: Context,
    base_psi: PsiClass,
    pairs: BTreeMap<PairKey, FourthRoot>,
    twists: BTreeMap<(String, TwistKey), String>,
}

impl EpsilonTable {
    pub fn new(context: Context, base_psi: PsiClass) -> EpsilonTable {
        EpsilonTable { context, base_psi, pairs: BTreeMap::new(), twists: BTreeMap::new() }
    }

    pub fn context(&self) -> Context {
        self.context
    }

    pub fn base_psi(&self) -> &PsiClass {
        &self.base_psi
    }

    pub fn set_pair(&mut self, a: &str, b: &str, psi: &PsiClass, value: impl Into<FourthRoot>) -> Option<FourthRoot> {
        self.pairs.insert(key(a, b, psi), value.into())
    }

    pub fn pair_entry(&self, a: &str, b: &str, psi: &PsiClass) -> Option<FourthRoot> {
        self.pairs.get(&key(a, b, psi)).copied()
    }

    /// Stored entries as `(a, b, psi, value)` with `a <= b`.
    pub fn entries(&self) -> impl Iterator<Item = (&str, &str, &PsiClass, FourthRoot)> {
        self.pairs.iter().map(|((a, b, p), v)| (a.as_str(), b.as_str(), p, *v))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn set_twist(&mut self, atom: &str, by: TwistKey, image: &str) {
        self.twists.insert((atom.to_string(), by), image.to_string());
    }

    pub fn twist_image(&self, atom: &str, by: &TwistKey) -> Option<&str> {
        self.twists.get(&(atom.to_string(), by.clone())).map(String::as_str)
    }

    pub fn twists(&self) -> impl Iterator<Item = (&str, &TwistKey, &str)> {
        self.twists.iter().map(|((a, k), i)| (a.as_str(), k, i.as_str()))
    }

    fn stored_with_base<'a>(&'a self, a: &str, b: &str, psi: &'a PsiClass) -> impl Iterator<Item = (&'a PsiClass, FourthRoot)> + 'a {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let start = (lo.to_string(), hi.to_string(), PsiClass { base: psi.base.clone(), shift: SquareClass(0) });
        let (lo, hi) = (lo.to_string(), hi.to_string());
        self.pairs
            .range(start..)
            .take_while(move |((x, y, p), _)| *x == lo && *y == hi && p.base == psi.base)
            .map(|((_, _, p), v)| (p, *v))
    }

    /// `eps(X (x) Y, psi)` from a stored entry, moving between translates of one base by the
    /// rule `eps(psi_a) = det(a) eps(psi)`.
    pub fn pair_value(&self, a: &str, b: &str, psi: &PsiClass, atoms: &AtomSet) -> Result<FourthRoot> {
        if let Some(v) = self.pair_entry(a, b, psi) {
            return Ok(v);
        }
        let Some((stored, v)) = self.stored_with_base(a, b, psi).next() else {
            return Err(Error::IncompleteTable(format!(
                "no root number for {a} (x) {b} at {}",
                psi.base
            )));
        };
        let det = atoms.tensor_det(a, b)?;
        Ok(v * det.value(stored.shift + psi.shift))
    }

    /// `eps(X, psi)` for a single atom from its own stored values.
    pub fn self_value(&self, id: &str, psi: &PsiClass, atoms: &AtomSet) -> Result<FourthRoot> {
        let atom = atoms.get(id)?;
        if let Some(v) = atom.eps_self.get(psi) {
            return Ok(*v);
        }
        let Some((stored, v)) = atom.eps_self.iter().find(|(p, _)| p.base == psi.base) else {
            return Err(Error::IncompleteTable(format!("no root number for {id} at {}", psi.base)));
        };
        Ok(*v * atoms.det(id)?.value(stored.shift + psi.shift))
    }

    fn check_context(&self, reps: &[&FormalRep], atoms: &AtomSet) -> Result<()> {
        for rep in reps {
            if let Some(c) = rep.context(atoms)? {
                if c != self.context {
                    return Err(Error::Domain(format!(
                        "{} is {c} but the table is {}; mixed-context root numbers are not defined",
                        rep.render(),
                        self.context
                    )));
                }
            }
        }
        Ok(())
    }

    /// Root number of a hyperbolic block `(P + P') (x) Y` with `Y` dual.
    fn hyperbolic(&self, p: &str, y: &str, atoms: &AtomSet) -> Result<FourthRoot> {
        Ok(match self.context {
            Context::Selfdual => atoms.tensor_det_at_minus_one(p, y)?.into(),
            Context::Conjugate => FourthRoot::ONE,
        })
    }

    /// `eps(M (x) N, psi)`, extended bi-additively over summands.
    pub fn epsilon(&self, m: &FormalRep, n: &FormalRep, psi: &PsiClass, atoms: &AtomSet) -> Result<FourthRoot> {
        self.check_context(&[m, n], atoms)?;
        let bm = m.blocks(atoms)?;
        let bn = n.blocks(atoms)?;
        let mut acc = FourthRoot::ONE;
        for (x, mx) in bm.dual.iter().chain(&bm.loose) {
            for (y, my) in bn.dual.iter().chain(&bn.loose) {
                acc *= self.pair_value(x, y, psi, atoms)?.pow(mx * my);
            }
        }
        // A hyperbolic block against a hyperbolic block contributes trivially.
        for (p, q, h) in &bm.hyper {
            for (y, my) in &bn.dual {
                acc *= self.hyperbolic(p, y, atoms)?.pow(h * my);
            }
            for (y, my) in &bn.loose {
                let v = self.pair_value(p, y, psi, atoms)? * self.pair_value(q, y, psi, atoms)?;
                acc *= v.pow(h * my);
            }
        }
        for (p, q, h) in &bn.hyper {
            for (x, mx) in &bm.dual {
                acc *= self.hyperbolic(p, x, atoms)?.pow(h * mx);
            }
            for (x, mx) in &bm.loose {
                let v = self.pair_value(x, p, psi, atoms)? * self.pair_value(x, q, psi, atoms)?;
                acc *= v.pow(h * mx);
            }
        }
        Ok(acc)
    }

    /// `eps(M, psi)` for a single representation.
    pub fn epsilon_single(&self, m: &FormalRep, psi: &PsiClass, atoms: &AtomSet) -> Result<FourthRoot> {
        self.check_context(&[m], atoms)?;
        let bm = m.blocks(atoms)?;
        let mut acc = FourthRoot::ONE;
        for (x, mx) in bm.dual.iter().chain(&bm.loose) {
            acc *= self.self_value(x, psi, atoms)?.pow(*mx);
        }
        if self.context == Context::Selfdual {
            for (p, _, h) in &bm.hyper {
                acc *= FourthRoot::from(atoms.det_at_minus_one(p)?).pow(*h);
            }
        }
        Ok(acc)
    }

    /// `M(c)` or `M (x) chi`, summand by summand through the twist closure.
    pub fn twist(&self, m: &FormalRep, by: &TwistKey, atoms: &AtomSet) -> Result<FormalRep> {
        if *by == TwistKey::Class(SquareClass::IDENTITY) {
            return Ok(m.clone());
        }
        let declared = match by {
            TwistKey::Class(_) => {
                if self.context != Context::Selfdual {
                    return Err(Error::Domain("square-class twists act on selfdual representations".into()));
                }
                m.declared()
            }
            TwistKey::Character(c) => {
                let chi = atoms.get(c)?;
                let d = chi.duality().filter(|d| chi.dim == 1 && d.context() == Context::Conjugate);
                let Some(d) = d else {
                    return Err(Error::Domain(format!("{c:?} is not a 1-dimensional conjugate-dual character")));
                };
                m.declared().map(|md: Duality| md.times(d.sign()))
            }
        };
        let mut out = FormalRep::new(declared);
        for (id, mult) in m.summands() {
            let image = self
                .twist_image(id, by)
                .ok_or_else(|| Error::IncompleteTable(format!("no twist of {id} by {by}")))?;
            out.add(image, *mult);
        }
        Ok(out)
    }
}

/// A real root number, as needed wherever a character value is produced.
pub fn real(v: FourthRoot, what: impl FnOnce() -> String) -> Result<Sign> {
    v.to_sign()
        .ok_or_else(|| Error::Domain(format!("root number of {} is {v}, not real", what())))
}
