//! Fixture builders shared by the integration tests.
#![allow(dead_code)]

pub mod suites;

use rand::Rng;
use vogan_core::field_model::{LocalFieldModel, PsiClass, QuadraticCharacter, Ramification, SquareClass};
use vogan_core::rep_algebra::{
    quadratic_root_numbers, validate_epsilon, Atom, AtomKind, AtomSet, Axiom, Context, Duality, EpsilonTable, FormalRep,
    TwistKey,
};
use vogan_core::{FourthRoot, Sign};

pub struct Fixture {
    pub atoms: AtomSet,
    pub table: EpsilonTable,
}

impl Fixture {
    pub fn psi(&self) -> &PsiClass {
        self.table.base_psi()
    }

    pub fn assert_valid(&self) {
        let report = validate_epsilon(&self.table, &self.atoms);
        assert!(report.is_valid(), "fixture fails validation: {:?}", report.violations);
    }
}

pub fn sign(rng: &mut impl Rng) -> Sign {
    if rng.random_bool(0.5) {
        Sign::Minus
    } else {
        Sign::Plus
    }
}

/// A square root of `s` in the fourth roots of unity, with a random sign.
fn sqrt(s: Sign, r: Sign) -> FourthRoot {
    let root = if s.is_plus() { FourthRoot::ONE } else { FourthRoot::I };
    root * r
}

pub fn random_selfdual_field(rng: &mut impl Rng) -> LocalFieldModel {
    match rng.random_range(0..3) {
        0 => LocalFieldModel::padic_odd(1).unwrap(),
        1 => LocalFieldModel::padic_odd(3).unwrap(),
        _ => LocalFieldModel::real(),
    }
}

pub fn random_conjugate_field(rng: &mut impl Rng) -> LocalFieldModel {
    match rng.random_range(0..5) {
        0 => LocalFieldModel::padic_odd(1).unwrap().with_quadratic_extension(Ramification::Inert).unwrap(),
        1 => LocalFieldModel::padic_odd(1).unwrap().with_quadratic_extension(Ramification::Ramified).unwrap(),
        2 => LocalFieldModel::padic_odd(3).unwrap().with_quadratic_extension(Ramification::Inert).unwrap(),
        3 => LocalFieldModel::padic_odd(3).unwrap().with_quadratic_extension(Ramification::Ramified).unwrap(),
        _ => LocalFieldModel::real().with_quadratic_extension(Ramification::Ramified).unwrap(),
    }
}

fn random_character(rng: &mut impl Rng, field: &LocalFieldModel) -> QuadraticCharacter {
    let classes = field.classes();
    let d = SquareClass(rng.random_range(1..classes.order()));
    classes.hilbert_character(d)
}

/// At most five selfdual atoms including the trivial character `1`, with root numbers
/// `r(X, Y) sqrt(det(X (x) Y)(-1))` for random signs `r`; symplectic atoms are fixed by
/// every square-class twist.
pub fn random_selfdual(rng: &mut impl Rng) -> Fixture {
    let field = random_selfdual_field(rng);
    let rank = field.classes().rank();
    let trivial = QuadraticCharacter::trivial(rank);
    let mut list = vec![Atom::dual("1", 1, Duality::Orthogonal, trivial)];
    let extra = rng.random_range(1..=4);
    let mut k = 0;
    while list.len() < 1 + extra {
        k += 1;
        match rng.random_range(0..4) {
            0 => list.push(Atom::dual(format!("chi{k}"), 1, Duality::Orthogonal, random_character(rng, &field))),
            1 => {
                let dim = rng.random_range(2..=3);
                list.push(Atom::dual(format!("O{k}"), dim, Duality::Orthogonal, random_character(rng, &field)));
            }
            2 => {
                let dim = 2 * rng.random_range(1..=2);
                list.push(Atom::dual(format!("S{k}"), dim, Duality::Symplectic, trivial));
            }
            _ if list.len() + 2 <= 1 + extra => {
                let s = sign(rng);
                let (p, q) = (format!("P{k}"), format!("P{k}v"));
                list.push(Atom::non_dual(&p, 1, Context::Selfdual, &q).with_det_at_minus_one(s));
                list.push(Atom::non_dual(&q, 1, Context::Selfdual, &p).with_det_at_minus_one(s));
            }
            _ => {}
        }
    }
    let atoms = AtomSet::new(field.clone(), list).unwrap();
    let psi = PsiClass::new("psi");
    let mut table = EpsilonTable::new(Context::Selfdual, psi.clone());
    let dual: Vec<String> = atoms.iter().filter(|a| a.duality().is_some()).map(|a| a.id.clone()).collect();
    for (i, x) in dual.iter().enumerate() {
        for y in &dual[i..] {
            let r = if x == "1" && y == "1" { Sign::Plus } else { sign(rng) };
            table.set_pair(x, y, &psi, sqrt(atoms.tensor_det_at_minus_one(x, y).unwrap(), r));
        }
    }
    // Entries for one member of each non-dual pair, to exercise the hyperbolic rule.
    for atom in atoms.iter() {
        let AtomKind::NonDual { partner, .. } = &atom.kind else { continue };
        if partner.as_str() < atom.id.as_str() {
            continue;
        }
        for y in &dual {
            let v = FourthRoot::from_exponent(rng.random_range(0..4));
            let total = FourthRoot::from(atoms.tensor_det_at_minus_one(&atom.id, y).unwrap());
            table.set_pair(&atom.id, y, &psi, v);
            table.set_pair(partner, y, &psi, total * v.inverse());
        }
    }
    let classes = field.classes().clone();
    for atom in atoms.iter().filter(|a| a.duality() == Some(Duality::Symplectic)) {
        for c in classes.elements().filter(|c| !c.is_identity()) {
            table.set_twist(&atom.id, TwistKey::Class(c), &atom.id);
        }
    }
    let atoms = with_unit_eps(atoms, &table, &psi);
    let fx = Fixture { atoms, table };
    fx.assert_valid();
    fx
}

/// `eps_self(X) = eps(X (x) 1)` for every dual atom.
fn with_unit_eps(atoms: AtomSet, table: &EpsilonTable, psi: &PsiClass) -> AtomSet {
    let unit = atoms.iter().find(|a| a.id == "1").map(|a| a.id.clone()).unwrap();
    let mut out = AtomSet::empty(atoms.field().clone());
    for atom in atoms.iter() {
        let mut atom = atom.clone();
        if atom.duality().is_some() {
            let v = table.pair_value(&atom.id, &unit, psi, &atoms).unwrap();
            atom.eps_self.insert(psi.clone(), v);
        }
        out.insert(atom).unwrap();
    }
    out
}

/// Conjugate-dual atoms: the orbit `{1, mu}`, one more orbit `{X, X mu}` and possibly a
/// fifth atom outside the twist closure. Root numbers depend on the two orbits and the
/// number of `mu` twists; same-sign products get `+1`.
pub fn random_conjugate(rng: &mut impl Rng) -> Fixture {
    let field = random_conjugate_field(rng);
    let rank = field.classes().rank();
    let trivial = QuadraticCharacter::trivial(rank);
    let omega = field.omega().unwrap();
    let det_for = |d: Duality, dim: u64| if d.sign().pow(dim).is_minus() { omega } else { trivial };

    // (id, duality, orbit, twist parity)
    let mut members: Vec<(String, Duality, usize, u8)> = vec![
        ("1".into(), Duality::ConjOrthogonal, 0, 0),
        ("mu".into(), Duality::ConjSymplectic, 0, 1),
    ];
    let mut list = vec![
        Atom::dual("1", 1, Duality::ConjOrthogonal, trivial),
        Atom::dual("mu", 1, Duality::ConjSymplectic, omega),
    ];
    // Dimension one would make X or X mu a second copy of the unit character.
    let dim = rng.random_range(2..=3);
    let base = if rng.random_bool(0.5) { Duality::ConjOrthogonal } else { Duality::ConjSymplectic };
    let flipped = base.times(Sign::Minus);
    list.push(Atom::dual("X", dim, base, det_for(base, dim)));
    list.push(Atom::dual("Xmu", dim, flipped, det_for(flipped, dim)));
    members.push(("X".into(), base, 1, 0));
    members.push(("Xmu".into(), flipped, 1, 1));
    if rng.random_bool(0.5) {
        let d = if rng.random_bool(0.5) { Duality::ConjOrthogonal } else { Duality::ConjSymplectic };
        let dim = if d == Duality::ConjOrthogonal { rng.random_range(2..=3) } else { rng.random_range(1..=3) };
        list.push(Atom::dual("Z", dim, d, det_for(d, dim)));
        members.push(("Z".into(), d, 2, 0));
    }
    let atoms = AtomSet::new(field, list).unwrap();
    let psi = PsiClass::new("psi0");
    let mut table = EpsilonTable::new(Context::Conjugate, psi.clone());
    // g[(o1, o2, parity)] for unordered orbit pairs.
    let mut g = std::collections::BTreeMap::new();
    for (i, (x, dx, ox, tx)) in members.iter().enumerate() {
        for (y, dy, oy, ty) in &members[i..] {
            let v = if dx.sign() == dy.sign() {
                Sign::Plus
            } else {
                let key = ((*ox).min(*oy), (*ox).max(*oy), (tx + ty) % 2);
                *g.entry(key).or_insert_with(|| sign(rng))
            };
            table.set_pair(x, y, &psi, v);
        }
    }
    let key = TwistKey::Character("mu".into());
    for (a, b) in [("1", "mu"), ("mu", "1"), ("X", "Xmu"), ("Xmu", "X")] {
        table.set_twist(a, key.clone(), b);
    }
    let atoms = with_unit_eps(atoms, &table, &psi);
    let fx = Fixture { atoms, table };
    fx.assert_valid();
    fx
}

/// All quadratic characters `chi_d` and Steinberg-type symplectic atoms `St_d`, closed
/// under square-class twists, with root numbers extended from random generator values.
pub fn quadratic_family(rng: &mut impl Rng, field: LocalFieldModel) -> Fixture {
    let classes = field.classes().clone();
    let trivial = QuadraticCharacter::trivial(classes.rank());
    let name = |p: &str, d: SquareClass| format!("{p}[{}]", classes.format(d));
    let mut list = Vec::new();
    for d in classes.elements() {
        list.push(Atom::dual(name("chi", d), 1, Duality::Orthogonal, classes.hilbert_character(d)));
    }
    for d in classes.elements() {
        list.push(Atom::dual(name("St", d), 2, Duality::Symplectic, trivial));
    }
    let mut atoms = AtomSet::new(field, list).unwrap();
    let psi = PsiClass::new("psi");
    let mut table = EpsilonTable::new(Context::Selfdual, psi.clone());
    let gens: Vec<FourthRoot> = (0..classes.rank())
        .map(|i| {
            let g = SquareClass(1 << i);
            sqrt(classes.pairing(g, g), sign(rng))
        })
        .collect();
    quadratic_root_numbers(&mut table, &mut atoms, Some(&gens)).unwrap();
    let h: Vec<Sign> = classes.elements().map(|_| sign(rng)).collect();
    let k: Vec<Sign> = classes.elements().map(|_| sign(rng)).collect();
    for a in classes.elements() {
        for b in classes.elements() {
            table.set_pair(&name("St", a), &name("chi", b), &psi, h[(a + b).0 as usize]);
            table.set_pair(&name("St", a), &name("St", b), &psi, k[(a + b).0 as usize]);
        }
    }
    for a in classes.elements() {
        for c in classes.elements().filter(|c| !c.is_identity()) {
            for p in ["chi", "St"] {
                table.set_twist(&name(p, a), TwistKey::Class(c), &name(p, a + c));
            }
        }
    }
    let mut out = AtomSet::empty(atoms.field().clone());
    for atom in atoms.iter() {
        let mut atom = atom.clone();
        if let Some(d) = atom.id.strip_prefix("St[") {
            let d = classes.parse(d.trim_end_matches(']')).unwrap();
            atom.eps_self.insert(psi.clone(), h[d.0 as usize].into());
        }
        out.insert(atom).unwrap();
    }
    let fx = Fixture { atoms: out, table };
    fx.assert_valid();
    fx
}

/// A representation of declared type `d` with random multiplicities drawn from `pool`.
pub fn random_rep(rng: &mut impl Rng, atoms: &AtomSet, pool: &[&str], d: Duality, max_mult: u64) -> FormalRep {
    let mut rep = FormalRep::new(Some(d));
    let mut done = std::collections::HashSet::new();
    for id in pool {
        let atom = atoms.get(id).unwrap();
        if done.contains(*id) {
            continue;
        }
        match atom.duality() {
            Some(ad) if ad.sign() == d.sign() => rep.add(id, rng.random_range(0..=max_mult)),
            Some(_) => rep.add(id, 2 * rng.random_range(0..=max_mult / 2)),
            None => {
                let m = rng.random_range(0..=1);
                let p = atom.partner().unwrap();
                if pool.contains(&p) {
                    rep.add(id, m);
                    rep.add(p, m);
                    done.insert(p.to_string());
                }
            }
        }
        done.insert(id.to_string());
    }
    rep
}

/// Draws until `accept` holds, giving up after a few hundred tries.
pub fn random_rep_where(
    rng: &mut impl Rng,
    atoms: &AtomSet,
    pool: &[&str],
    d: Duality,
    accept: impl Fn(&FormalRep) -> bool,
) -> Option<FormalRep> {
    (0..300).map(|_| random_rep(rng, atoms, pool, d, 3)).find(|r| accept(r))
}

pub fn ids(atoms: &AtomSet) -> Vec<&str> {
    atoms.iter().map(|a| a.id.as_str()).collect()
}

/// A square class with `omega(t) = -1`.
pub fn non_norm(field: &LocalFieldModel) -> SquareClass {
    let omega = field.omega().unwrap();
    field.classes().elements().find(|&t| omega.value(t).is_minus()).unwrap()
}

/// A small table that fails exactly the given axiom.
pub fn axiom_fixture(axiom: Axiom) -> Fixture {
    let k = LocalFieldModel::padic_odd(1).unwrap();
    let g = k.classes().clone();
    let trivial = QuadraticCharacter::trivial(2);
    let chi_u = g.hilbert_character(g.parse("u").unwrap());
    let psi = PsiClass::new("psi");
    match axiom {
        Axiom::A1 | Axiom::A2 => {
            let atoms = AtomSet::new(
                k,
                vec![Atom::dual("1", 1, Duality::Orthogonal, trivial), Atom::dual("chi", 1, Duality::Orthogonal, chi_u)],
            )
            .unwrap();
            let mut table = EpsilonTable::new(Context::Selfdual, psi.clone());
            if axiom == Axiom::A1 {
                // eps(chi, psi_pi) must be chi(pi) eps(chi, psi) = -eps(chi, psi).
                table.set_pair("1", "chi", &psi, Sign::Plus);
                table.set_pair("1", "chi", &psi.translate(g.parse("pi").unwrap()), Sign::Plus);
            } else {
                table.set_pair("1", "chi", &psi, FourthRoot::I);
            }
            Fixture { atoms, table }
        }
        Axiom::A3 | Axiom::A4 | Axiom::A5 => {
            let e = k.with_quadratic_extension(Ramification::Inert).unwrap();
            let omega = e.omega().unwrap();
            let atoms = AtomSet::new(
                e,
                vec![
                    Atom::dual("1", 1, Duality::ConjOrthogonal, trivial),
                    Atom::dual("x", 1, Duality::ConjOrthogonal, trivial),
                    Atom::dual("mu", 1, Duality::ConjSymplectic, omega),
                    Atom::non_dual("P", 1, Context::Conjugate, "Pv"),
                    Atom::non_dual("Pv", 1, Context::Conjugate, "P"),
                ],
            )
            .unwrap();
            let mut table = EpsilonTable::new(Context::Conjugate, psi.clone());
            match axiom {
                Axiom::A3 => table.set_pair("1", "x", &psi, Sign::Minus),
                Axiom::A4 => {
                    table.set_pair("P", "1", &psi, Sign::Plus);
                    table.set_pair("Pv", "1", &psi, Sign::Minus)
                }
                _ => table.set_pair("1", "mu", &psi, FourthRoot::I),
            };
            Fixture { atoms, table }
        }
        other => panic!("no dedicated fixture for {other}"),
    }
}
