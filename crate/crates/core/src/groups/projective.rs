use std::sync::Arc;

use super::Group;
use crate::error::{Error, Result};

/// Upper unitriangular `S <= PGL(3, p)` acting on points and lines of the
/// projective plane over `F_p`.
pub struct ProjectivePlane {
    pub p: usize,
    pub s: Arc<Group>,
    /// `points[g][x]` is the image of point `x` under `g`.
    pub points: Vec<Vec<usize>>,
    pub lines: Vec<Vec<usize>>,
}

type Mat = [[usize; 3]; 3];

fn mat_mul(a: &Mat, b: &Mat, p: usize) -> Mat {
    let mut c = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum::<usize>() % p;
        }
    }
    c
}

/// Scale so the first nonzero coordinate is 1.
fn normalize(v: [usize; 3], p: usize) -> [usize; 3] {
    let lead = *v.iter().find(|&&x| x != 0).expect("nonzero vector");
    let inv = (1..p).find(|&y| lead * y % p == 1).expect("field inverse");
    v.map(|x| x * inv % p)
}

pub fn projective_plane_data(p: usize) -> Result<ProjectivePlane> {
    if p != 2 && p != 3 {
        return Err(Error::InvalidParameters(format!(
            "projective plane data is provided for p = 2, 3 (got {p})"
        )));
    }
    let mut mats: Vec<Mat> = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                mats.push([[1, a, c], [0, 1, b], [0, 0, 1]]);
            }
        }
    }
    let n = mats.len();
    let index = |m: &Mat| {
        mats.iter()
            .position(|x| x == m)
            .expect("closed under products")
    };
    let mut table = vec![0u16; n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] = index(&mat_mul(&mats[i], &mats[j], p)) as u16;
        }
    }
    let s = Arc::new(Group::from_table(format!("S{p}"), table)?);

    let mut pts: Vec<[usize; 3]> = Vec::new();
    for x in 0..p {
        for y in 0..p {
            for z in 0..p {
                let v = [x, y, z];
                if v != [0, 0, 0] && normalize(v, p) == v {
                    pts.push(v);
                }
            }
        }
    }
    let find = |v: [usize; 3]| {
        pts.iter()
            .position(|&w| w == normalize(v, p))
            .expect("point")
    };
    let points = mats
        .iter()
        .map(|m| {
            pts.iter()
                .map(|v| find([0, 1, 2].map(|i| (0..3).map(|k| m[i][k] * v[k]).sum::<usize>() % p)))
                .collect()
        })
        .collect();
    // a line is the kernel of a row vector w; g sends it to the kernel of w g^-1
    let lines = (0..n)
        .map(|g| {
            let mi = &mats[s.inv(g)];
            pts.iter()
                .map(|w| {
                    find([0, 1, 2].map(|j| (0..3).map(|k| w[k] * mi[k][j]).sum::<usize>() % p))
                })
                .collect()
        })
        .collect();
    Ok(ProjectivePlane {
        p,
        s,
        points,
        lines,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_group, is_isomorphic};

    #[test]
    fn plane_sizes_and_fixed_points() {
        for (p, name) in [(2, "D8"), (3, "X3")] {
            let pl = projective_plane_data(p).unwrap();
            assert_eq!(pl.s.order(), p * p * p);
            assert!(is_isomorphic(&pl.s, &build_group(name).unwrap()).is_some());
            let np = p * p + p + 1;
            assert_eq!(pl.points[0].len(), np);
            assert_eq!(pl.lines[0].len(), np);
            for act in [&pl.points, &pl.lines] {
                let fixed = (0..np).filter(|&x| act.iter().all(|g| g[x] == x)).count();
                assert_eq!(fixed, 1);
                // action property
                for a in 0..pl.s.order() {
                    for b in 0..pl.s.order() {
                        for x in 0..np {
                            assert_eq!(act[pl.s.mul(a, b)][x], act[a][act[b][x]]);
                        }
                    }
                }
            }
        }
        assert!(projective_plane_data(5).is_err());
    }
}
