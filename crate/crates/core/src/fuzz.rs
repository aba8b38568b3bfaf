//! Random partial actions that are valid by construction.
//!
//! Each component is a pair groupoid on `r` objects times a finite group
//! `H`, acting on the fibred set `⊔_e F` through an `H`-set `F`. The global
//! action on `𝕂^X` is then restricted to the coordinates of a random
//! subset `S ⊆ X`, which gives a partial action on `𝕂^S`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::{diagonal_action, pair_times_group};
use crate::groupoid::Groupoid;
use crate::linalg::Field;
use crate::paction::PartialAction;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FuzzGroup {
    Cyclic(usize),
    Symmetric3,
}

const S3: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];

impl FuzzGroup {
    pub fn order(self) -> usize {
        match self {
            FuzzGroup::Cyclic(m) => m,
            FuzzGroup::Symmetric3 => 6,
        }
    }

    pub fn mul(self, a: usize, b: usize) -> usize {
        match self {
            FuzzGroup::Cyclic(m) => (a + b) % m,
            FuzzGroup::Symmetric3 => {
                let p: [usize; 3] = std::array::from_fn(|i| S3[a][S3[b][i]]);
                S3.iter().position(|q| *q == p).unwrap()
            }
        }
    }

    pub fn inv(self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.mul(a, b) == 0).unwrap()
    }

    /// Subgroup generated by `x`.
    fn cyclic_subgroup(self, x: usize) -> Vec<usize> {
        let mut out = vec![0];
        let mut y = x;
        while y != 0 {
            out.push(y);
            y = self.mul(y, x);
        }
        out.sort();
        out
    }

    fn name(self) -> String {
        match self {
            FuzzGroup::Cyclic(m) => format!("Z/{m}"),
            FuzzGroup::Symmetric3 => "S3".into(),
        }
    }
}

/// An `H`-set given as a union of coset spaces `H/K`; `action[k][x]` is
/// the image of point `x` under group element `k`.
fn random_hset(rng: &mut ChaCha8Rng, grp: FuzzGroup, max_points: usize) -> Vec<Vec<usize>> {
    let n = grp.order();
    let mut subgroups: Vec<Vec<usize>> = (0..n).map(|x| grp.cyclic_subgroup(x)).collect();
    subgroups.push((0..n).collect());
    subgroups.sort();
    subgroups.dedup();
    let mut action: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut points = 0;
    loop {
        let fitting: Vec<&Vec<usize>> = subgroups.iter().filter(|k| points + n / k.len() <= max_points).collect();
        if fitting.is_empty() || (points > 0 && rng.gen_bool(0.5)) {
            break;
        }
        let k = fitting[rng.gen_range(0..fitting.len())];
        // cosets hK, each represented by its sorted element list
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        for h in 0..n {
            let mut c: Vec<usize> = k.iter().map(|&y| grp.mul(h, y)).collect();
            c.sort();
            if !cosets.contains(&c) {
                cosets.push(c);
            }
        }
        for (g, row) in action.iter_mut().enumerate() {
            for c in &cosets {
                let mut img: Vec<usize> = c.iter().map(|&y| grp.mul(g, y)).collect();
                img.sort();
                row.push(points + cosets.iter().position(|d| *d == img).unwrap());
            }
        }
        points += cosets.len();
    }
    action
}

/// Field-independent description of a generated instance.
#[derive(Clone, Debug)]
pub struct FuzzInstance {
    pub description: String,
    pub groupoid: Groupoid,
    pub dim: usize,
    pub moves: Vec<Vec<(usize, usize)>>,
    pub global: bool,
}

impl FuzzInstance {
    pub fn realize(&self, field: Field) -> PartialAction {
        diagonal_action(field, self.groupoid.clone(), self.dim, &self.moves)
    }
}

struct ComponentPlan {
    objects: usize,
    group: FuzzGroup,
}

fn plan_components(rng: &mut ChaCha8Rng, max_morphisms: usize, max_dim: usize) -> Vec<ComponentPlan> {
    let mut plans = Vec::new();
    let mut budget = max_morphisms;
    let mut dims = max_dim;
    while budget >= 1 && dims >= 1 {
        let mut options = Vec::new();
        for m in 1..=budget {
            options.push(ComponentPlan { objects: 1, group: FuzzGroup::Cyclic(m) });
        }
        if budget >= 6 {
            options.push(ComponentPlan { objects: 1, group: FuzzGroup::Symmetric3 });
        }
        for r in 2..=3usize {
            if r * r <= budget && r <= dims {
                options.push(ComponentPlan { objects: r, group: FuzzGroup::Cyclic(1) });
            }
            if 2 * r * r <= budget && r <= dims {
                options.push(ComponentPlan { objects: r, group: FuzzGroup::Cyclic(2) });
            }
        }
        let p = options.swap_remove(rng.gen_range(0..options.len()));
        budget -= p.objects * p.objects * p.group.order();
        dims -= p.objects;
        plans.push(p);
        if rng.gen_bool(0.6) {
            break;
        }
    }
    plans
}

/// Generates one instance with at most `max_morphisms` arrows (identities
/// included) and algebra dimension at most `max_dim`.
pub fn generate(rng: &mut ChaCha8Rng, max_morphisms: usize, max_dim: usize) -> FuzzInstance {
    assert!(max_morphisms >= 1 && max_dim >= 1, "bounds must be positive");
    let plans = plan_components(rng, max_morphisms, max_dim);
    let mut dims_left = max_dim;
    let force_global = rng.gen_bool(0.25);
    let mut groupoids = Vec::new();
    let mut all_moves = Vec::new();
    let mut dim = 0;
    let mut obj_counter = 0;
    let mut descr = Vec::new();
    let mut global = true;
    for (ci, p) in plans.iter().enumerate() {
        let remaining_plans: usize = plans[ci + 1..].iter().map(|q| q.objects).sum();
        let fiber_cap = ((dims_left - remaining_plans) / p.objects).max(1);
        let hset = random_hset(rng, p.group, fiber_cap);
        let fiber = hset[0].len();
        let names: Vec<String> = (0..p.objects).map(|i| format!("e{}", obj_counter + i + 1)).collect();
        obj_counter += p.objects;
        let base = names.clone();
        let c = ci + 1;
        let grp = pair_times_group(&names, p.group.order(), |a, b| p.group.mul(a, b), |a| p.group.inv(a), |t, s, k| {
            format!("c{c}:{}<-{}:{k}", base[t], base[s])
        });

        // X = objects × fiber; keep a random subset S
        let keep: Vec<bool> = (0..p.objects * fiber)
            .map(|_| force_global || rng.gen_bool(0.7))
            .collect();
        let mut index = vec![None; p.objects * fiber];
        for (x, &k) in keep.iter().enumerate() {
            if k {
                index[x] = Some(dim);
                dim += 1;
            }
        }
        dims_left -= p.objects * fiber;
        let parse = |name: &str| -> (usize, usize, usize) {
            if let Some(obj) = name.strip_prefix("id:") {
                let t = names.iter().position(|n| n == obj).unwrap();
                return (t, t, 0);
            }
            let rest = name.split_once(':').unwrap().1;
            let (arrow, k) = rest.rsplit_once(':').unwrap();
            let (t, s) = arrow.split_once("<-").unwrap();
            (names.iter().position(|n| n == t).unwrap(), names.iter().position(|n| n == s).unwrap(), k.parse().unwrap())
        };
        for g in grp.morphisms() {
            let (t, s, k) = parse(grp.morphism_name(g));
            let mut moves = Vec::new();
            for f in 0..fiber {
                let from = s * fiber + f;
                let to = t * fiber + hset[k][f];
                if let (Some(a), Some(b)) = (index[from], index[to]) {
                    moves.push((a, b));
                }
            }
            all_moves.push(moves);
        }
        if keep.iter().any(|k| !k) {
            global = false;
        }
        descr.push(format!("P{}×{} on {}×{}, |S|={}", p.objects, p.group.name(), p.objects, fiber, keep.iter().filter(|k| **k).count()));
        groupoids.push(grp);
    }
    let groupoid = Groupoid::disjoint_union(&groupoids.iter().collect::<Vec<_>>()).expect("fresh names");
    FuzzInstance { description: descr.join(" ⊔ "), groupoid, dim, moves: all_moves, global }
}

/// `count` instances from a seeded stream.
pub fn generate_batch(seed: u64, count: usize, max_morphisms: usize, max_dim: usize) -> Vec<FuzzInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| generate(&mut rng, max_morphisms, max_dim)).collect()
}
