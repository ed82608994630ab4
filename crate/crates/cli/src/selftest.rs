//! Built-in consistency checks: the twisted action against its reference table and the
//! ambient-lattice recomputation, and the boundary Hodge types against their closed forms.

use eiscomp::hodge::{boundary_table, hodge_type_from_lifted, Side};
use eiscomp::weyl::{lift, star, star_ambient, star_lifted, LiftedChar, TorusCharGL, WeylElt};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const DEFAULT_SEED: u64 = 20240611;

const RANDOM_CHARS: usize = 200;
const GRID: i64 = 20;

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failures.is_empty())
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("seed {}\n\n| check | cases | result |\n|---|---|---|\n", self.seed);
        for c in &self.checks {
            let res = if c.failures.is_empty() { "pass".to_string() } else { format!("{} failures", c.failures.len()) };
            s.push_str(&format!("| {} | {} | {} |\n", c.name, c.cases, res));
        }
        for c in &self.checks {
            for f in &c.failures {
                s.push_str(&format!("\n{}: {f}", c.name));
            }
        }
        s
    }
}

fn reference_star(w: WeylElt, k1: i64, k2: i64) -> (i64, i64) {
    match w {
        WeylElt::Id => (k1, k2),
        WeylElt::S12 => (k2 - 1, k1 + 1),
        WeylElt::S23 => (k1 - k2 - 1, -k2 - 2),
        WeylElt::C123 => (-k2 - 3, k1 - k2),
        WeylElt::C132 => (k2 - k1 - 3, -k1 - 3),
        WeylElt::S13 => (-k1 - 4, k2 - k1 - 2),
    }
}

fn reference_type(w: WeylElt, k1: i64, k2: i64) -> (i64, i64) {
    match w {
        WeylElt::Id => (0, k2),
        WeylElt::S12 => (0, k1 + 1),
        WeylElt::S23 => (k2 + 1, k2),
        WeylElt::C123 => (k2 + 1, k1 + k2 + 2),
        WeylElt::C132 => (k1 + 2, k1 + 1),
        WeylElt::S13 => (k1 + 2, k1 + k2 + 2),
    }
}

fn star_check(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..RANDOM_CHARS {
        let l = TorusCharGL::new(rng.gen_range(-50..=50), rng.gen_range(-50..=50));
        let m = LiftedChar::new(l.k1, l.k2, rng.gen_range(-50..=50), rng.gen_range(-50..=50));
        for w in WeylElt::ALL {
            let (a, b) = reference_star(w, l.k1, l.k2);
            let s = star(w, l);
            if s != TorusCharGL::new(a, b) {
                failures.push(format!("{w} * {l} = {s}, expected ({a}, {b})"));
            }
            if star_ambient(w, l) != s {
                failures.push(format!("{w} * {l}: ambient recomputation gives {}", star_ambient(w, l)));
            }
            let sl = star_lifted(w, m);
            if sl.project() != star(w, m.project()) || sl.r != m.r {
                failures.push(format!("{w} * {m}: lifted action does not project"));
            }
        }
    }
    Check {
        name: "twisted action",
        cases: RANDOM_CHARS * 6,
        failures,
    }
}

fn type_check() -> Check {
    let mut failures = Vec::new();
    let mut cases = 0;
    for k1 in 0..=GRID {
        for k2 in 0..=k1 {
            let l = TorusCharGL::new(k1, k2);
            for w in WeylElt::ALL {
                cases += 1;
                match hodge_type_from_lifted(star_lifted(w, lift(l))) {
                    Ok(t) if t == reference_type(w, k1, k2) => {}
                    Ok(t) => failures.push(format!("{w} at {l}: type {t:?}, expected {:?}", reference_type(w, k1, k2))),
                    Err(e) => failures.push(format!("{w} at {l}: {e}")),
                }
            }
            for side in [Side::Plus, Side::Minus] {
                match boundary_table(l, side) {
                    Ok(t) => {
                        for r in &t.rows {
                            if r.weight != r.hodge_type.0 + r.hodge_type.1 {
                                failures.push(format!("{side:?} {} at {l}: weight {} vs type {:?}", r.w, r.weight, r.hodge_type));
                            }
                        }
                    }
                    Err(e) => failures.push(format!("{side:?} table at {l}: {e}")),
                }
            }
        }
    }
    Check {
        name: "hodge types",
        cases,
        failures,
    }
}

pub fn run(seed: u64) -> Report {
    Report {
        seed,
        checks: vec![star_check(seed), type_check()],
    }
}
