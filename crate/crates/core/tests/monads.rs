//! Plugin laws on random elements, outside the exhaustive checker.

mod common;

use common::{base_set, plugins};
use multicat::finset::compose;
use multicat::{Element, FiniteMap, FiniteSet, Monad, MonadPlugin};
use proptest::prelude::*;

fn all_elements(p: &Monad, x: &FiniteSet) -> Vec<Element> {
    p.enumerate_telements(x, 3).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn functoriality_and_shape(which in 0..5usize, pick in any::<prop::sample::Index>(), f in prop::collection::vec(0..2usize, 2), g in prop::collection::vec(0..2usize, 2)) {
        let p = &plugins()[which];
        let (x, y, z) = (base_set(2), FiniteSet::atoms(["y0", "y1"]), FiniteSet::atoms(["z0", "z1"]));
        let f = FiniteMap::from_images(x.clone(), y.clone(), f.iter().map(|&i| y.elements()[i].clone()).collect()).unwrap();
        let g = FiniteMap::from_images(y, z.clone(), g.iter().map(|&i| z.elements()[i].clone()).collect()).unwrap();
        let ts = all_elements(p, &x);
        let t = pick.get(&ts);
        let once = p.apply_map(&compose(&g, &f).unwrap(), t).unwrap();
        let twice = p.apply_map(&g, &p.apply_map(&f, t).unwrap()).unwrap();
        prop_assert_eq!(&once, &twice);
        prop_assert_eq!(p.shape(&once).unwrap(), p.shape(t).unwrap());
        prop_assert_eq!(p.labels(&once).unwrap().len(), p.labels(t).unwrap().len());
    }

    #[test]
    fn unflatten_inverts_multiplication(which in 0..5usize, outer in any::<prop::sample::Index>(), picks in prop::collection::vec(any::<prop::sample::Index>(), 3)) {
        let p = &plugins()[which];
        let x = base_set(2);
        let inner = all_elements(p, &x);
        let shapes = p.enumerate_telements(&FiniteSet::atoms(["a", "b", "c"]), 2).unwrap();
        let shape = outer.get(&shapes);
        // fill the outer shape with inner elements, one per label position
        let labels = p.labels(shape).unwrap();
        let filled: Vec<Element> = labels.iter().enumerate().map(|(i, _)| picks[i % 3].get(&inner).clone()).collect();
        let tt = p.with_labels(shape, &filled).unwrap();
        let flat = p.mult(&tt).unwrap();
        prop_assert_eq!(p.unflatten(&tt, &flat).unwrap(), tt.clone());
        p.validate(&flat, &x).unwrap();
    }
}

#[test]
fn telement_counts_at_small_bounds() {
    let x = base_set(2);
    // words of length <= 3 over two letters
    assert_eq!(Monad::FreeMonoid.enumerate_telements(&x, 3).unwrap().len(), 1 + 2 + 4 + 8);
    assert_eq!(Monad::Identity.enumerate_telements(&x, 3).unwrap().len(), 2);
    assert_eq!(Monad::exceptions(FiniteSet::atoms(["e"])).enumerate_telements(&x, 3).unwrap().len(), 3);
    // sorted words of length <= 3 over two letters: 1 + 2 + 3 + 4
    assert_eq!(Monad::FreeCommutativeMonoid.enumerate_telements(&x, 3).unwrap().len(), 10);
}
