use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::{check_cap, direct_product_capped, group_cap, Group};
use crate::error::{Error, Result};

fn cache() -> &'static Mutex<HashMap<String, Arc<Group>>> {
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<Group>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Builds (or fetches from the process-wide cache) a catalog group.
///
/// Grammar: `C<n>`, `D<n>`, `SD<n>`, `Q<n>`, `M<n>`, `E<p>_<k>` or `E<n>`,
/// `X<p>`, `C4:C4`, `C2^2:C4`, `C4oD8`, `1`, and products `<A>x<B>`.
pub fn build_group(spec: &str) -> Result<Arc<Group>> {
    let spec = spec.trim();
    if let Some(g) = cache().lock().expect("catalog cache").get(spec) {
        return Ok(g.clone());
    }
    let g = build_uncached(spec)?;
    let mut c = cache().lock().expect("catalog cache");
    Ok(c.entry(spec.to_string()).or_insert(g).clone())
}

fn build_uncached(spec: &str) -> Result<Arc<Group>> {
    if spec.contains('x') {
        let mut parts = spec.split('x');
        let first = parts.next().unwrap_or_default();
        let mut acc = build_group(first)?;
        for part in parts {
            let rhs = build_group(part)?;
            acc = direct_product_capped(&acc, &rhs, group_cap())?;
        }
        // a product keeps its own catalog name
        let g = Group::from_table(spec, acc.table().to_vec())?;
        return Ok(Arc::new(g));
    }
    if spec == "1" || spec == "C1" {
        return Ok(Group::trivial());
    }
    let g = match spec {
        "C4:C4" => semidirect(spec, 4, 4, 3)?,
        "C2^2:C4" => swap_extension(spec)?,
        "C4oD8" => central_product(spec)?,
        _ => family(spec)?,
    };
    Ok(Arc::new(g))
}

fn parse_num(s: &str, spec: &str) -> Result<usize> {
    s.parse::<usize>()
        .map_err(|_| Error::UnknownFamily(spec.to_string()))
}

fn power_of(n: usize, p: usize) -> Option<u32> {
    let mut k = 0;
    let mut m = n;
    while m > 1 && m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some(k)
}

fn smallest_prime(n: usize) -> usize {
    (2..=n).find(|d| n.is_multiple_of(*d)).unwrap_or(n)
}

fn is_prime(n: usize) -> bool {
    n >= 2 && smallest_prime(n) == n
}

fn family(spec: &str) -> Result<Group> {
    let bad = |msg: &str| Error::InvalidParameters(format!("{spec}: {msg}"));
    let (fam, rest) = if let Some(r) = spec.strip_prefix("SD") {
        ("SD", r)
    } else {
        let i = spec
            .find(|c: char| c.is_ascii_digit() || c == '_')
            .ok_or_else(|| Error::UnknownFamily(spec.to_string()))?;
        spec.split_at(i)
    };
    match fam {
        "C" => {
            let n = parse_num(rest, spec)?;
            if n == 0 || power_of(n, smallest_prime(n.max(2))).is_none() {
                return Err(bad("order must be a prime power"));
            }
            check_cap(n, group_cap())?;
            cyclic(spec, n)
        }
        "D" | "SD" | "Q" | "M" => {
            let n = parse_num(rest, spec)?;
            let k = power_of(n, 2).ok_or_else(|| bad("order must be a power of 2"))?;
            let min = match fam {
                "D" => 2,
                "Q" => 3,
                _ => 4,
            };
            if k < min {
                return Err(bad("order too small for this family"));
            }
            check_cap(n, group_cap())?;
            let m = n / 2;
            match fam {
                "D" => semidirect(spec, m, 2, m - 1),
                "SD" => semidirect(spec, m, 2, m / 2 - 1),
                "M" => semidirect(spec, m, 2, m / 2 + 1),
                _ => quaternion(spec, m),
            }
        }
        "E" => {
            let (p, k) = if let Some((a, b)) = rest.trim_start_matches('_').split_once('_') {
                (parse_num(a, spec)?, parse_num(b, spec)? as u32)
            } else {
                let n = parse_num(rest, spec)?;
                let p = smallest_prime(n.max(2));
                (
                    p,
                    power_of(n, p).ok_or_else(|| bad("order must be a prime power"))?,
                )
            };
            if !is_prime(p) || k == 0 {
                return Err(bad("need a prime and a positive rank"));
            }
            check_cap(p.pow(k), group_cap())?;
            elementary(spec, p, k as usize)
        }
        "X" => {
            let p = parse_num(rest, spec)?;
            if !is_prime(p) {
                return Err(bad("X<p> needs a prime"));
            }
            check_cap(p * p * p, group_cap())?;
            if p == 2 {
                semidirect(spec, 4, 2, 3)
            } else {
                heisenberg(spec, p)
            }
        }
        _ => Err(Error::UnknownFamily(spec.to_string())),
    }
}

fn cyclic(name: &str, n: usize) -> Result<Group> {
    let table = (0..n * n).map(|i| ((i / n + i % n) % n) as u16).collect();
    Group::from_table(name, table)
}

/// `C_m : C_k` with the generator of `C_k` acting by `a -> r a`.
fn semidirect(name: &str, m: usize, k: usize, r: usize) -> Result<Group> {
    let r_pow: Vec<usize> = (0..k)
        .scan(1usize, |acc, _| {
            let v = *acc;
            *acc = *acc * r % m;
            Some(v)
        })
        .collect();
    Group::from_generators(name, (0usize, 0usize), &[(1, 0), (0, 1)], |x, y| {
        ((x.0 + r_pow[x.1] * y.0) % m, (x.1 + y.1) % k)
    })
}

fn quaternion(name: &str, m: usize) -> Result<Group> {
    Group::from_generators(name, (0usize, 0usize), &[(1, 0), (0, 1)], |x, y| {
        let twisted = if x.1 == 1 { m - y.0 } else { y.0 };
        let extra = if x.1 == 1 && y.1 == 1 { m / 2 } else { 0 };
        ((x.0 + twisted + extra) % m, x.1 ^ y.1)
    })
}

fn elementary(name: &str, p: usize, k: usize) -> Result<Group> {
    let gens: Vec<Vec<usize>> = (0..k)
        .map(|i| (0..k).map(|j| usize::from(i == j)).collect())
        .collect();
    Group::from_generators(name, vec![0usize; k], &gens, |x, y| {
        x.iter().zip(y).map(|(a, b)| (a + b) % p).collect()
    })
}

/// Upper unitriangular 3x3 matrices over F_p as triples `(a, b, c)`.
fn heisenberg(name: &str, p: usize) -> Result<Group> {
    Group::from_generators(
        name,
        (0usize, 0usize, 0usize),
        &[(1, 0, 0), (0, 1, 0)],
        |x, y| {
            (
                (x.0 + y.0) % p,
                (x.1 + y.1) % p,
                (x.2 + y.2 + x.0 * y.1) % p,
            )
        },
    )
}

/// `(C2 x C2) : C4`, the generator of `C4` swapping the two factors.
fn swap_extension(name: &str) -> Result<Group> {
    Group::from_generators(
        name,
        (0usize, 0usize, 0usize),
        &[(1, 0, 0), (0, 0, 1)],
        |x, y| {
            let (u, v) = if x.2 % 2 == 1 { (y.1, y.0) } else { (y.0, y.1) };
            (x.0 ^ u, x.1 ^ v, (x.2 + y.2) % 4)
        },
    )
}

/// The Pauli group: 2x2 matrices over the Gaussian integers.
fn central_product(name: &str) -> Result<Group> {
    type M = [(i32, i32); 4];
    fn mul(a: &M, b: &M) -> M {
        let cm = |x: (i32, i32), y: (i32, i32)| (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0);
        let add = |x: (i32, i32), y: (i32, i32)| (x.0 + y.0, x.1 + y.1);
        [
            add(cm(a[0], b[0]), cm(a[1], b[2])),
            add(cm(a[0], b[1]), cm(a[1], b[3])),
            add(cm(a[2], b[0]), cm(a[3], b[2])),
            add(cm(a[2], b[1]), cm(a[3], b[3])),
        ]
    }
    let id: M = [(1, 0), (0, 0), (0, 0), (1, 0)];
    let i_id: M = [(0, 1), (0, 0), (0, 0), (0, 1)];
    let x: M = [(0, 0), (1, 0), (1, 0), (0, 0)];
    let z: M = [(1, 0), (0, 0), (0, 0), (-1, 0)];
    Group::from_generators(name, id, &[i_id, x, z], mul)
}

/// Catalog 2-groups up to `max_order`: every group of order at most 16 and
/// a selection of order 32.
pub fn standard_two_groups(max_order: usize) -> Vec<&'static str> {
    const LIST: &[(usize, &str)] = &[
        (1, "1"),
        (2, "C2"),
        (4, "C4"),
        (4, "E4"),
        (8, "C8"),
        (8, "C4xC2"),
        (8, "E8"),
        (8, "D8"),
        (8, "Q8"),
        (16, "C16"),
        (16, "C8xC2"),
        (16, "C4xC4"),
        (16, "C4xE4"),
        (16, "E16"),
        (16, "D8xC2"),
        (16, "Q8xC2"),
        (16, "M16"),
        (16, "D16"),
        (16, "SD16"),
        (16, "Q16"),
        (16, "C4:C4"),
        (16, "C2^2:C4"),
        (16, "C4oD8"),
        (32, "C32"),
        (32, "D32"),
        (32, "SD32"),
        (32, "Q32"),
        (32, "M32"),
        (32, "D16xC2"),
        (32, "SD16xC2"),
        (32, "Q16xC2"),
        (32, "D8xC4"),
        (32, "D8xE4"),
        (32, "Q8xC4"),
    ];
    LIST.iter()
        .filter(|(n, _)| *n <= max_order)
        .map(|(_, s)| *s)
        .collect()
}

/// Family descriptions for `group list`.
pub fn catalog_names() -> Vec<(&'static str, &'static str)> {
    vec![
        ("C<n>", "cyclic of prime-power order n"),
        ("D<n>", "dihedral of order n (D4 is the Klein group)"),
        ("SD<n>", "semidihedral of order n >= 16"),
        ("Q<n>", "generalized quaternion of order n >= 8"),
        ("M<n>", "modular group C_{n/2} : C2 of order n >= 16"),
        ("E<p>_<k>, E<n>", "elementary abelian of rank k (order n)"),
        (
            "X<p>",
            "D8 for p = 2, extraspecial of order p^3 and exponent p otherwise",
        ),
        ("C4:C4, C2^2:C4, C4oD8", "remaining groups of order 16"),
        ("<A>x<B>", "direct product"),
    ]
}
