//! Exhaustive, bounded verification of the monad laws and of cartesianness.
//!
//! Iterated `T`-elements are enumerated with a weight bound: an element of
//! `T(T(X))` is admitted when its outer size and its weight are both at most
//! the bound. A base element weighs 1; a term weighs the larger of its size
//! and the sum of its labels' weights, and never less than 1, so terms
//! without labels are still paid for and the iterated layers stay small. Membership then depends
//! only on the shape, so every check below is exact for the shapes it
//! enumerates.

use serde_json::{json, Value};

use super::MonadPlugin;
use crate::element::Element;
use crate::error::Result;
use crate::finset::{is_pullback, pullback, FiniteMap, FiniteSet, PullbackWitness, Square};
use crate::report::CheckReport;

fn layer(plugin: &dyn MonadPlugin, base: &[(Element, usize)], bound: usize) -> Result<Vec<(Element, usize)>> {
    let mut out = Vec::new();
    for (t, w) in plugin.enumerate_weighted(base, bound)? {
        let w = w.max(plugin.size(&t)?).max(1);
        if w <= bound {
            out.push((t, w));
        }
    }
    Ok(out)
}

fn unit_weights(x: &FiniteSet) -> Vec<(Element, usize)> {
    x.iter().map(|e| (e.clone(), 1)).collect()
}

fn outcome(got: Result<Element>, want: &Element) -> std::result::Result<(), String> {
    match got {
        Ok(g) if &g == want => Ok(()),
        Ok(g) => Err(format!("got {g}, expected {want}")),
        Err(e) => Err(e.to_string()),
    }
}

/// Checks both unit laws, associativity, and naturality of `η` and `μ`
/// against every map `X -> Y` with `|Y| <= 3`, on all iterated elements
/// within `bound`.
pub fn check_monad_laws(plugin: &dyn MonadPlugin, x: &FiniteSet, bound: usize) -> Result<CheckReport> {
    let mut report = CheckReport::with_bound(Some(bound));
    let tx = layer(plugin, &unit_weights(x), bound)?;
    let ttx = layer(plugin, &tx, bound)?;
    let tttx = layer(plugin, &ttx, bound)?;

    for (t, _) in &tx {
        let left = plugin.mult(&plugin.unit(t));
        report.record("left unit", outcome(left, t).map_err(|d| (t.clone(), d)));
        let right = plugin.relabel(t, &mut |l| Ok(plugin.unit(l))).and_then(|u| plugin.mult(&u));
        report.record("right unit", outcome(right, t).map_err(|d| (t.clone(), d)));
    }

    for (ttt, _) in &tttx {
        let outer = plugin.mult(ttt).and_then(|tt| plugin.mult(&tt));
        let inner = plugin.relabel(ttt, &mut |tt| plugin.mult(tt)).and_then(|tt| plugin.mult(&tt));
        let res = match (outer, inner) {
            (Ok(a), Ok(b)) if a == b => Ok(()),
            (Ok(a), Ok(b)) => Err(format!("mu.mu_T gives {a}, mu.T(mu) gives {b}")),
            (Err(e), _) | (_, Err(e)) => Err(e.to_string()),
        };
        report.record("associativity", res.map_err(|d| (ttt.clone(), d)));
    }

    for n in 0..=3 {
        let y = FiniteSet::new((0..n).map(|i| Element::atom(format!("y{i}"))));
        for f in FiniteMap::all_maps(x, &y) {
            for a in x {
                let fa = f.apply(a)?;
                let got = plugin.apply_map(&f, &plugin.unit(a));
                report.record("unit naturality", outcome(got, &plugin.unit(fa)).map_err(|d| (a.clone(), d)));
            }
            for (tt, _) in &ttx {
                let got = plugin.mult(tt).and_then(|t| plugin.apply_map(&f, &t));
                let want = plugin.relabel(tt, &mut |t| plugin.apply_map(&f, t)).and_then(|u| plugin.mult(&u));
                let res = match want {
                    Ok(w) => outcome(got, &w),
                    Err(e) => Err(e.to_string()),
                };
                report.record("multiplication naturality", res.map_err(|d| (tt.clone(), d)));
            }
        }
    }
    Ok(report)
}

/// A failed pullback test together with the square that reproduces it.
#[derive(Clone, Debug)]
pub struct SquareWitness {
    pub square_name: String,
    pub square: Square,
    pub witness: PullbackWitness,
}

#[derive(Clone, Debug)]
pub struct CartesianReport {
    pub bound: usize,
    pub unit_square_ok: bool,
    pub mult_square_ok: bool,
    pub pullback_preservation_ok: bool,
    pub squares_checked: usize,
    pub witnesses: Vec<SquareWitness>,
}

impl CartesianReport {
    pub fn passed(&self) -> bool {
        self.unit_square_ok && self.mult_square_ok && self.pullback_preservation_ok
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "bound": self.bound,
            "unit_square_ok": self.unit_square_ok,
            "mult_square_ok": self.mult_square_ok,
            "pullback_preservation_ok": self.pullback_preservation_ok,
            "squares_checked": self.squares_checked,
            "witnesses": self.witnesses.iter().map(|w| json!({
                "square": w.square_name,
                "witness": match &w.witness {
                    PullbackWitness::Missing(e) => json!({"missing": e.to_json()}),
                    PullbackWitness::Collision(a, b) => json!({"collision": [a.to_json(), b.to_json()]}),
                },
            })).collect::<Vec<_>>(),
        })
    }
}

fn shape_map(plugin: &dyn MonadPlugin, tz: &FiniteSet, shapes: &FiniteSet) -> Result<FiniteMap> {
    FiniteMap::try_new(tz.clone(), shapes.clone(), |t| plugin.shape(t))
}

/// `T(f)` restricted to the elements of the given shapes.
fn lift(plugin: &dyn MonadPlugin, f: &FiniteMap, shapes: &[Element]) -> Result<FiniteMap> {
    let src = FiniteSet::new(plugin.over_shapes(f.source(), shapes)?);
    let tgt = FiniteSet::new(plugin.over_shapes(f.target(), shapes)?);
    FiniteMap::try_new(src, tgt, |t| plugin.apply_map(f, t))
}

/// The image of `T` on the chosen pullback of `f` and `g`, as a square over
/// `T(f)` and `T(g)`, restricted to the given shapes.
fn lifted_pullback_square(
    plugin: &dyn MonadPlugin,
    f: &FiniteMap,
    g: &FiniteMap,
    shapes: &[Element],
) -> Result<Square> {
    let pb = pullback(f, g)?;
    Ok(Square {
        to_left: lift(plugin, &pb.left_projection, shapes)?,
        to_right: lift(plugin, &pb.right_projection, shapes)?,
        f: lift(plugin, f, shapes)?,
        g: lift(plugin, g, shapes)?,
    })
}

fn battery(sizes: &[(usize, usize, usize)]) -> Vec<(FiniteMap, FiniteMap)> {
    let named = |prefix: &str, n: usize| FiniteSet::new((0..n).map(|i| Element::atom(format!("{prefix}{i}"))));
    let mut out = Vec::new();
    for &(nx, ny, nz) in sizes {
        let (x, y, z) = (named("x", nx), named("y", ny), named("z", nz));
        for f in FiniteMap::all_maps(&x, &z) {
            for g in FiniteMap::all_maps(&y, &z) {
                out.push((f.clone(), g));
            }
        }
    }
    out
}

/// Checks that the naturality squares of `η` and `μ` at `Z -> 1` are
/// pullbacks, and that `T` preserves a battery of small pullbacks, on all
/// elements within `bound`.
pub fn check_cartesian(plugin: &dyn MonadPlugin, z: &FiniteSet, bound: usize) -> Result<CartesianReport> {
    let mut witnesses = Vec::new();
    let mut squares_checked = 0usize;
    let one = FiniteSet::terminal();
    let shape_list = plugin.shapes(bound);
    let shapes = FiniteSet::new(shape_list.clone());
    let tz = FiniteSet::new(plugin.over_shapes(z, &shape_list)?);
    let bang_t = shape_map(plugin, &tz, &shapes)?;

    let mut test = |name: &str, sq: Square, witnesses: &mut Vec<SquareWitness>| -> Result<bool> {
        squares_checked += 1;
        match is_pullback(&sq)? {
            None => Ok(true),
            Some(w) => {
                witnesses.push(SquareWitness { square_name: name.to_string(), square: sq, witness: w });
                Ok(false)
            }
        }
    };

    // Unit square: Z -> T(Z) over 1 -> T(1).
    let unit_square = Square {
        to_left: FiniteMap::to_terminal(z),
        to_right: FiniteMap::new(z.clone(), tz.clone(), |x| plugin.unit(x))?,
        f: FiniteMap::new(one.clone(), shapes.clone(), |x| plugin.unit(x))?,
        g: bang_t.clone(),
    };
    let unit_square_ok = test("unit", unit_square, &mut witnesses)?;

    // Multiplication square: T(T(Z)) -> T(Z) over T(T(1)) -> T(1).
    let weighted: Vec<(Element, usize)> = shape_list
        .iter()
        .map(|s| Ok((s.clone(), plugin.labels(s)?.len().max(plugin.size(s)?).max(1))))
        .collect::<Result<_>>()?;
    let l_set = FiniteSet::new(layer(plugin, &weighted, bound)?.into_iter().map(|(e, _)| e));
    let mut corner = Vec::new();
    for ss in &l_set {
        corner.extend(plugin.enumerate_fiber(&bang_t, ss)?);
    }
    let corner = FiniteSet::new(corner);
    let r_set = FiniteSet::new(l_set.iter().map(|s| plugin.mult(s)).collect::<Result<Vec<_>>>()?);
    let zr = FiniteSet::new(plugin.over_shapes(z, r_set.elements())?);
    let mult_square = Square {
        to_left: FiniteMap::try_new(corner.clone(), l_set.clone(), |t| plugin.apply_map(&bang_t, t))?,
        to_right: FiniteMap::try_new(corner, zr.clone(), |t| plugin.mult(t))?,
        f: FiniteMap::try_new(l_set, r_set.clone(), |s| plugin.mult(s))?,
        g: shape_map(plugin, &zr, &r_set)?,
    };
    let mult_square_ok = test("multiplication", mult_square, &mut witnesses)?;

    let mut pullback_preservation_ok = true;
    let mut cases = battery(&[(0, 1, 1), (1, 1, 1), (1, 2, 1), (2, 2, 1), (2, 2, 2), (1, 2, 2), (2, 1, 2)]);
    let three = FiniteSet::atoms(["z0", "z1", "z2"]);
    let collapse = FiniteMap::new(three.clone(), FiniteSet::atoms(["w0", "w1"]), |e| {
        if e.as_atom() == Some("z2") { "w1".into() } else { "w0".into() }
    })?;
    let pick = FiniteMap::new(FiniteSet::atoms(["v0", "v1"]), collapse.target().clone(), |e| {
        if e.as_atom() == Some("v0") { "w0".into() } else { "w1".into() }
    })?;
    cases.push((collapse.clone(), pick));
    cases.push((collapse.clone(), collapse));
    for (f, g) in cases {
        let name = format!("T preserves the pullback of {f:?} and {g:?}");
        let sq = lifted_pullback_square(plugin, &f, &g, &shape_list)?;
        if !test(&name, sq, &mut witnesses)? {
            pullback_preservation_ok = false;
            break;
        }
    }

    Ok(CartesianReport {
        bound,
        unit_square_ok,
        mult_square_ok,
        pullback_preservation_ok,
        squares_checked,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monads::Monad;

    #[test]
    fn free_monoid_laws_small() {
        let r = check_monad_laws(&Monad::FreeMonoid, &FiniteSet::range(2), 3).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert!(r.checked["associativity"] > 0);
    }

    #[test]
    fn identity_is_cartesian() {
        let r = check_cartesian(&Monad::Identity, &FiniteSet::range(2), 2).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn free_monoid_is_cartesian() {
        let r = check_cartesian(&Monad::FreeMonoid, &FiniteSet::range(2), 4).unwrap();
        assert!(r.passed(), "{:?}", r.witnesses);
    }

    #[test]
    fn commutative_monoid_fails_mult_square() {
        let r = check_cartesian(&Monad::FreeCommutativeMonoid, &FiniteSet::range(2), 3).unwrap();
        assert!(r.unit_square_ok);
        assert!(!r.mult_square_ok);
        let w = &r.witnesses[0];
        assert_eq!(is_pullback(&w.square).unwrap(), Some(w.witness.clone()));
    }
}
