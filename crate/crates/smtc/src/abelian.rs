//! Abelian braided categories from quadratic forms.
//!
//! For a finite abelian group written in a basis `g_1, …, g_r` of orders
//! `n_i`, and a quadratic form `θ`, the canonical gauge uses `ζ_i = θ(g_i)`,
//! `M_ij = θ(g_i + g_j) / (θ(g_i) θ(g_j))` and
//!
//! ```text
//! R^{xy} = Π_i ζ_i^{x_i y_i} Π_{i<j} M_ij^{x_i y_j}
//! F^{xyz} = Π_i ζ_i^{x_i (y_i + z_i - [y_i + z_i]_{n_i})}
//! ```

use crate::category::{Category, FusionRules};
use crate::C64;

/// `ℤ/n_1 × … × ℤ/n_r` with elements indexed in mixed radix, first
/// coordinate fastest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    orders: Vec<usize>,
}

impl AbelianGroup {
    pub fn new(orders: Vec<usize>) -> Self {
        assert!(orders.iter().all(|&n| n >= 1));
        AbelianGroup { orders }
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn size(&self) -> usize {
        self.orders.iter().product()
    }

    pub fn coords(&self, mut x: usize) -> Vec<usize> {
        self.orders
            .iter()
            .map(|&n| {
                let c = x % n;
                x /= n;
                c
            })
            .collect()
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(&self.orders)
            .rev()
            .fold(0, |acc, (&c, &n)| acc * n + c % n)
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        let (a, b) = (self.coords(x), self.coords(y));
        let sum: Vec<usize> = a.iter().zip(&b).map(|(p, q)| p + q).collect();
        self.index(&sum)
    }

    pub fn fusion(&self) -> FusionRules {
        FusionRules::from_group(self.size(), |a, b| self.add(a, b))
    }

    /// Default labels `(x_1,…,x_r)`, or plain integers for a cyclic group.
    pub fn labels(&self) -> Vec<String> {
        (0..self.size())
            .map(|x| {
                let c = self.coords(x);
                if c.len() == 1 {
                    c[0].to_string()
                } else {
                    format!("({})", c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
                }
            })
            .collect()
    }
}

fn zpow(z: C64, k: usize) -> C64 {
    z.powu(k as u32)
}

/// Rounds components within `1e-12` of `0` or `±1`.
fn tidy(z: C64) -> C64 {
    let snap = |x: f64| {
        for t in [0.0, 1.0, -1.0] {
            if (x - t).abs() < 1e-12 {
                return t;
            }
        }
        x
    };
    C64::new(snap(z.re), snap(z.im))
}

/// Builds the canonical-gauge category on an arbitrary group-like fusion
/// ring, given a basis `(element, order)` and the twist of every element.
pub fn canonical_category(
    name: &str,
    labels: Vec<String>,
    rules: FusionRules,
    basis: &[(usize, usize)],
    theta: &[C64],
    fermion: Option<usize>,
) -> Category {
    let n = rules.rank();
    let product = |a: usize, b: usize| rules.product(a, b).expect("group-like fusion");
    let group = AbelianGroup::new(basis.iter().map(|&(_, k)| k).collect());
    let mut coords = vec![Vec::new(); n];
    for x in 0..group.size() {
        let c = group.coords(x);
        let mut el = 0;
        for (i, &ci) in c.iter().enumerate() {
            for _ in 0..ci {
                el = product(el, basis[i].0);
            }
        }
        coords[el] = c;
    }
    assert!(coords.iter().all(|c| c.len() == basis.len()), "basis does not generate the group");
    let r = basis.len();
    let zeta: Vec<C64> = basis.iter().map(|&(g, _)| theta[g]).collect();
    let mut m = vec![vec![C64::new(1.0, 0.0); r]; r];
    for i in 0..r {
        for j in i + 1..r {
            let (gi, gj) = (basis[i].0, basis[j].0);
            m[i][j] = theta[product(gi, gj)] / (theta[gi] * theta[gj]);
        }
    }
    let rvalue = |x: usize, y: usize| {
        let (cx, cy) = (&coords[x], &coords[y]);
        let mut v = C64::new(1.0, 0.0);
        for i in 0..r {
            v *= zpow(zeta[i], cx[i] * cy[i]);
            for j in i + 1..r {
                v *= zpow(m[i][j], cx[i] * cy[j]);
            }
        }
        v
    };
    let fvalue = |x: usize, y: usize, z: usize| {
        let mut v = C64::new(1.0, 0.0);
        for (i, &(_, k)) in basis.iter().enumerate() {
            let carry = (coords[y][i] + coords[z][i]) / k;
            v *= zpow(zpow(zeta[i], k), coords[x][i] * carry);
        }
        v
    };
    let mut cat = Category::new(name, labels, rules, fermion);
    cat.fill_r(|[a, b, _]| tidy(rvalue(a, b)));
    cat.fill_f(|[a, b, c, _, _, _]| tidy(fvalue(a, b, c)));
    cat
}

/// Canonical category on `AbelianGroup` coordinates with twist `theta`.
pub fn from_quadratic_form(
    name: &str,
    group: &AbelianGroup,
    labels: Option<Vec<String>>,
    theta: impl Fn(&[usize]) -> C64,
    fermion: Option<usize>,
) -> Category {
    let rules = group.fusion();
    let twists: Vec<C64> = (0..group.size()).map(|x| theta(&group.coords(x))).collect();
    let basis: Vec<(usize, usize)> = group
        .orders()
        .iter()
        .enumerate()
        .map(|(i, &k)| {
            let mut c = vec![0; group.orders().len()];
            c[i] = 1;
            (group.index(&c), k)
        })
        .collect();
    canonical_category(
        name,
        labels.unwrap_or_else(|| group.labels()),
        rules,
        &basis,
        &twists,
        fermion,
    )
}

/// Order of `a` in a group-like fusion ring.
pub fn element_order(rules: &FusionRules, a: usize) -> usize {
    let mut x = a;
    let mut k = 1;
    while x != 0 {
        x = rules.product(x, a).expect("group-like fusion");
        k += 1;
    }
    k
}

fn span_with(rules: &FusionRules, members: &[bool], g: usize, k: usize) -> Vec<bool> {
    let n = rules.rank();
    let mut out = vec![false; n];
    for h in (0..n).filter(|&h| members[h]) {
        let mut x = h;
        for _ in 0..k {
            out[x] = true;
            x = rules.product(x, g).expect("group-like fusion");
        }
    }
    out
}

/// Whether `⟨g⟩` meets `members` only in the unit.
fn independent(rules: &FusionRules, members: &[bool], g: usize, k: usize) -> bool {
    let mut x = g;
    for _ in 1..k {
        if members[x] {
            return false;
        }
        x = rules.product(x, g).expect("group-like fusion");
    }
    true
}

/// All ordered bases `(g_1, …, g_r)` with element orders exactly `orders`
/// whose cyclic subgroups form a direct sum equal to the whole group.
pub fn bases_with_orders(rules: &FusionRules, orders: &[usize]) -> Vec<Vec<usize>> {
    let n = rules.rank();
    if orders.iter().product::<usize>() != n {
        return Vec::new();
    }
    let mut unit = vec![false; n];
    unit[0] = true;
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    search(rules, orders, &unit, &mut chosen, &mut out);
    out
}

fn search(rules: &FusionRules, orders: &[usize], members: &[bool], chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let i = chosen.len();
    if i == orders.len() {
        out.push(chosen.clone());
        return;
    }
    for g in 0..rules.rank() {
        if element_order(rules, g) == orders[i] && independent(rules, members, g, orders[i]) {
            let next = span_with(rules, members, g, orders[i]);
            chosen.push(g);
            search(rules, orders, &next, chosen, out);
            chosen.pop();
        }
    }
}

/// Some basis of a group-like fusion ring, as `(element, order)` pairs,
/// preferring elements of large order.
pub fn find_basis(rules: &FusionRules) -> Option<Vec<(usize, usize)>> {
    if !rules.is_group_like() {
        return None;
    }
    let n = rules.rank();
    let mut unit = vec![false; n];
    unit[0] = true;
    let mut chosen = Vec::new();
    if greedy(rules, &unit, 1, &mut chosen) {
        Some(chosen)
    } else {
        None
    }
}

fn greedy(rules: &FusionRules, members: &[bool], size: usize, chosen: &mut Vec<(usize, usize)>) -> bool {
    let n = rules.rank();
    if size == n {
        return true;
    }
    let mut candidates: Vec<(usize, usize)> = (1..n)
        .map(|g| (g, element_order(rules, g)))
        .filter(|&(g, k)| independent(rules, members, g, k))
        .collect();
    candidates.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    for (g, k) in candidates {
        let next = span_with(rules, members, g, k);
        chosen.push((g, k));
        if greedy(rules, &next, size * k, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_radix_round_trip() {
        let g = AbelianGroup::new(vec![2, 10]);
        for x in 0..20 {
            assert_eq!(g.index(&g.coords(x)), x);
        }
        assert_eq!(g.add(g.index(&[1, 7]), g.index(&[1, 5])), g.index(&[0, 2]));
    }

    #[test]
    fn basis_of_z2_z10() {
        let g = AbelianGroup::new(vec![2, 10]);
        let basis = find_basis(&g.fusion()).unwrap();
        assert_eq!(basis.iter().map(|b| b.1).product::<usize>(), 20);
        assert!(!bases_with_orders(&g.fusion(), &[2, 10]).is_empty());
        assert!(bases_with_orders(&g.fusion(), &[20]).is_empty());
    }
}
