//! Defect maps for the bialgebra axioms. Each returns an element that must
//! vanish; verification code only needs to test `is_zero`.

use super::{antipode, coproduct, counit, delta_m_linearized, CoproductKind, Structure};
use crate::algebra::{Bar, LinComb, Tensor, Word};

pub type Triple = (Bar, Bar, Bar);

/// `(Δ⊗id)Δ(x) − (id⊗Δ)Δ(x)`.
pub fn coassociativity_defect(kind: CoproductKind, x: &Bar) -> LinComb<Triple> {
    let mut out = LinComb::zero();
    for (t, c) in coproduct(kind, x).iter() {
        for (l, d) in coproduct(kind, &t.0).iter() {
            out.add_term((l.0.clone(), l.1.clone(), t.1.clone()), c * d);
        }
        for (r, d) in coproduct(kind, &t.1).iter() {
            out.add_term((t.0.clone(), r.0.clone(), r.1.clone()), -(c * d));
        }
    }
    out
}

/// `((ν⊗id)Δ(x) − x, (id⊗ν)Δ(x) − x)`.
pub fn counit_defect(kind: CoproductKind, x: &Bar) -> (LinComb<Bar>, LinComb<Bar>) {
    let x = x.with_flavor(kind.flavor());
    let mut left = -LinComb::basis(x.clone());
    let mut right = -LinComb::basis(x.clone());
    for (t, c) in coproduct(kind, &x).iter() {
        left.add_term(t.1.clone(), c * counit(&t.0));
        right.add_term(t.0.clone(), c * counit(&t.1));
    }
    (left, right)
}

/// `Δ(x·y) − Δ(x)Δ(y)`.
pub fn multiplicativity_defect(kind: CoproductKind, x: &Bar, y: &Bar) -> LinComb<Tensor<Bar, Bar>> {
    let f = kind.flavor();
    let (x, y) = (x.with_flavor(f), y.with_flavor(f));
    let xy = x.mul_same(&y);
    (*coproduct(kind, &xy)).clone() - coproduct(kind, &x).mul_tensor(&coproduct(kind, &y))
}

/// `(m(S⊗id)Δ(x) − ν(x)𝟏, m(id⊗S)Δ(x) − ν(x)𝟏)`.
pub fn antipode_defect(structure: Structure, x: &Bar) -> (LinComb<Bar>, LinComb<Bar>) {
    let f = structure.flavor();
    let x = x.with_flavor(f);
    let unit = LinComb::term(Bar::unit(f), counit(&x));
    let mut left = -unit.clone();
    let mut right = -unit;
    for (t, c) in coproduct(structure.coproduct_kind(), &x).iter() {
        let sl = antipode(&t.0, structure);
        left.add_scaled(&sl.product(&LinComb::basis(t.1.clone()), |a, b| a.mul_same(b)), c);
        let sr = antipode(&t.1, structure);
        right.add_scaled(&LinComb::basis(t.0.clone()).product(&sr, |a, b| a.mul_same(b)), c);
    }
    (left, right)
}

/// `a_m = (δ_m⊗id)δ_m − (id⊗δ_m)δ_m`.
pub fn co_prelie_associator(w: &Word) -> LinComb<(Word, Word, Word)> {
    let mut assoc = LinComb::zero();
    for (t, c) in delta_m_linearized(w).iter() {
        for (l, d) in delta_m_linearized(&t.0).iter() {
            assoc.add_term((l.0.clone(), l.1.clone(), t.1.clone()), c * d);
        }
        for (r, d) in delta_m_linearized(&t.1).iter() {
            assoc.add_term((t.0.clone(), r.0.clone(), r.1.clone()), -(c * d));
        }
    }
    assoc
}

/// `a_m − (τ⊗id)a_m`: vanishes iff `δ_m` is a left pre-Lie coalgebra
/// at `w`.
pub fn co_prelie_defect(w: &Word) -> LinComb<(Word, Word, Word)> {
    let a = co_prelie_associator(w);
    let swapped = a.map_basis(|(x, y, z)| (y.clone(), x.clone(), z.clone()));
    a - swapped
}

/// `a_m − (id⊗τ)a_m`: the right-sided identity.
pub fn right_co_prelie_defect(w: &Word) -> LinComb<(Word, Word, Word)> {
    let a = co_prelie_associator(w);
    let swapped = a.map_basis(|(x, y, z)| (x.clone(), z.clone(), y.clone()));
    a - swapped
}
