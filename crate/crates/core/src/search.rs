//! A small backtracking solver over finite domains.
//!
//! Variables are assigned in index order. A constraint is first evaluated
//! when the last of its static variables is assigned; it may then ask to be
//! re-evaluated once some later variable is assigned (a dynamic watch, undone
//! on backtrack). This handles constraints like `h(g(x)) = y` where the
//! variable `g(x)` only becomes known during the search.

use crate::element::Element;
use crate::error::{Error, Result};

pub enum Verdict {
    Holds,
    Fails,
    /// Not decidable until this (unassigned) variable is assigned.
    Waiting(usize),
}

/// The assigned prefix of a candidate solution.
pub struct Partial<'s> {
    domains: &'s [Vec<Element>],
    chosen: &'s [usize],
}

impl Partial<'_> {
    pub fn get(&self, var: usize) -> Option<&Element> {
        self.chosen.get(var).map(|&i| &self.domains[var][i])
    }

    /// The value of a variable the constraint declared as static.
    pub fn value(&self, var: usize) -> &Element {
        self.get(var).expect("static variable is assigned")
    }
}

type Check<'a> = Box<dyn Fn(&Partial<'_>) -> Verdict + 'a>;

pub struct Search<'a> {
    domains: Vec<Vec<Element>>,
    root: Vec<Check<'a>>,
    by_trigger: Vec<Vec<usize>>,
    constraints: Vec<Check<'a>>,
    cap: usize,
}

impl<'a> Search<'a> {
    pub fn new(domains: Vec<Vec<Element>>) -> Self {
        let n = domains.len();
        Search { domains, root: Vec::new(), by_trigger: vec![Vec::new(); n], constraints: Vec::new(), cap: 10_000_000 }
    }

    /// Caps the number of search nodes; exceeding it is an error.
    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn num_vars(&self) -> usize {
        self.domains.len()
    }

    pub fn add(&mut self, vars: &[usize], check: impl Fn(&Partial<'_>) -> Verdict + 'a) {
        match vars.iter().max() {
            None => self.root.push(Box::new(check)),
            Some(&t) => {
                self.by_trigger[t].push(self.constraints.len());
                self.constraints.push(Box::new(check));
            }
        }
    }

    /// Requires `f` to hold once all of `vars` are assigned.
    pub fn require(&mut self, vars: &[usize], f: impl Fn(&Partial<'_>) -> bool + 'a) {
        self.add(vars, move |p| if f(p) { Verdict::Holds } else { Verdict::Fails });
    }

    /// Calls `emit` on every solution until it returns `false`. Returns the
    /// number of solutions found.
    pub fn solve(&self, emit: &mut dyn FnMut(&[Element]) -> Result<bool>) -> Result<usize> {
        let empty = Partial { domains: &self.domains, chosen: &[] };
        for c in &self.root {
            if !matches!(c(&empty), Verdict::Holds) {
                return Ok(0);
            }
        }
        let n = self.domains.len();
        let mut state = State {
            chosen: Vec::with_capacity(n),
            watches: vec![Vec::new(); n],
            trail: Vec::new(),
            nodes: 0,
            found: 0,
            stop: false,
        };
        self.descend(&mut state, emit)?;
        Ok(state.found)
    }

    pub fn all(&self) -> Result<Vec<Vec<Element>>> {
        let mut out = Vec::new();
        self.solve(&mut |s| {
            out.push(s.to_vec());
            Ok(true)
        })?;
        Ok(out)
    }

    fn descend(&self, st: &mut State, emit: &mut dyn FnMut(&[Element]) -> Result<bool>) -> Result<()> {
        let var = st.chosen.len();
        if var == self.domains.len() {
            st.found += 1;
            let values: Vec<Element> = st.chosen.iter().enumerate().map(|(v, &i)| self.domains[v][i].clone()).collect();
            if !emit(&values)? {
                st.stop = true;
            }
            return Ok(());
        }
        for i in 0..self.domains[var].len() {
            st.nodes += 1;
            if st.nodes > self.cap {
                return Err(Error::Explosion { what: "backtracking search".into(), cap: self.cap });
            }
            st.chosen.push(i);
            let mark = st.trail.len();
            if self.consistent(st, var) {
                self.descend(st, emit)?;
            }
            while st.trail.len() > mark {
                let w = st.trail.pop().expect("non-empty");
                st.watches[w].pop();
            }
            st.chosen.pop();
            if st.stop {
                break;
            }
        }
        Ok(())
    }

    fn consistent(&self, st: &mut State, var: usize) -> bool {
        let pending: Vec<usize> = self.by_trigger[var].iter().chain(st.watches[var].iter()).copied().collect();
        for c in pending {
            let verdict = {
                let p = Partial { domains: &self.domains, chosen: &st.chosen };
                (self.constraints[c])(&p)
            };
            match verdict {
                Verdict::Holds => {}
                Verdict::Fails => return false,
                Verdict::Waiting(w) => {
                    debug_assert!(w > var, "waiting on an assigned variable");
                    st.watches[w].push(c);
                    st.trail.push(w);
                }
            }
        }
        true
    }
}

struct State {
    chosen: Vec<usize>,
    watches: Vec<Vec<usize>>,
    trail: Vec<usize>,
    nodes: usize,
    found: usize,
    stop: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn digits(n: usize) -> Vec<Element> {
        (0..n).map(|i| Element::atom(i.to_string())).collect()
    }

    fn num(e: &Element) -> usize {
        e.as_atom().unwrap().parse().unwrap()
    }

    #[test]
    fn counts_injective_assignments() {
        let mut s = Search::new(vec![digits(3); 3]);
        for a in 0..3 {
            for b in a + 1..3 {
                s.require(&[a, b], move |p| p.value(a) != p.value(b));
            }
        }
        assert_eq!(s.all().unwrap().len(), 6);
    }

    #[test]
    fn dynamic_watch() {
        // x0 names a later variable index (1 or 2) that must equal 1.
        let mut s = Search::new(vec![vec!["1".into(), "2".into()], digits(2), digits(2)]);
        s.add(&[0], |p| {
            let target = num(p.value(0));
            match p.get(target) {
                None => Verdict::Waiting(target),
                Some(v) if num(v) == 1 => Verdict::Holds,
                Some(_) => Verdict::Fails,
            }
        });
        // x0 = 1: x1 = 1, x2 free (2); x0 = 2: x2 = 1, x1 free (2)
        assert_eq!(s.all().unwrap().len(), 4);
    }

    #[test]
    fn node_cap() {
        let s = Search::new(vec![digits(10); 6]).with_cap(1000);
        assert!(matches!(s.all(), Err(Error::Explosion { .. })));
    }
}
