use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{fan_from_class_map, invalid};
use crate::error::Result;
use crate::fan::{DivisorClass, Fan};
use crate::linalg::vector::{ints, to_i64};
use crate::linalg::IntMatrix;
use crate::locus::is_really_immaculate;
use crate::polyhedra::Polyhedron;

/// Block sizes `p_0, ..., p_4` of the five sets `J_α` and the coefficients
/// `c = (0, c_2, ..., c_{p_2})`, `b = (b_1, ..., b_{p_3})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PicThreeData {
    pub p: [usize; 5],
    pub c: Vec<i64>,
    pub b: Vec<i64>,
}

impl PicThreeData {
    /// `b = c = 0`.
    pub fn plain(p: [usize; 5]) -> Self {
        PicThreeData {
            p,
            c: vec![0; p[2]],
            b: vec![0; p[3]],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.p.contains(&0) {
            return Err(invalid("every p_i must be at least 1"));
        }
        if self.c.len() != self.p[2] || self.b.len() != self.p[3] {
            return Err(invalid("c needs p_2 entries and b needs p_3 entries"));
        }
        if self.c[0] != 0 {
            return Err(invalid("c must start with 0"));
        }
        if self.c.iter().chain(&self.b).any(|&x| x < 0) {
            return Err(invalid("b and c must be non-negative"));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.p.iter().sum::<usize>() - 3
    }

    fn pi64(&self) -> [i64; 5] {
        self.p.map(|x| x as i64)
    }

    pub fn c_bar(&self) -> i64 {
        self.c.iter().sum()
    }

    pub fn b_bar(&self) -> i64 {
        self.b.iter().sum()
    }

    /// Index of the first ray of each `J_α`.
    pub fn offsets(&self) -> [usize; 5] {
        let mut o = [0; 5];
        for a in 1..5 {
            o[a] = o[a - 1] + self.p[a - 1];
        }
        o
    }

    pub fn class_map(&self) -> IntMatrix {
        let n = self.dim() + 3;
        let o = self.offsets();
        let mut pi = IntMatrix::zeros(3, n);
        let mut put = |row: usize, block: usize, values: &dyn Fn(usize) -> i64| {
            for nu in 0..self.p[block] {
                pi.set(row, o[block] + nu, BigInt::from(values(nu)));
            }
        };
        put(0, 0, &|_| 1);
        put(0, 1, &|_| 1);
        put(0, 2, &|nu| -self.c[nu]);
        put(0, 3, &|nu| -(self.b[nu] + 1));
        put(1, 1, &|_| 1);
        put(1, 2, &|_| 1);
        put(1, 4, &|_| -1);
        put(2, 1, &|_| -1);
        put(2, 3, &|_| 1);
        put(2, 4, &|_| 1);
        pi
    }

    /// `J_α ∪ J_{α+1}` as index lists.
    pub fn primitive_collections(&self) -> Vec<Vec<usize>> {
        let o = self.offsets();
        let block = |a: usize| (o[a]..o[a] + self.p[a]).collect::<Vec<_>>();
        (0..5)
            .map(|a| [block(a), block((a + 1) % 5)].concat())
            .collect()
    }

    pub fn canonical_class(&self) -> [i64; 3] {
        let [p0, p1, p2, p3, p4] = self.pi64();
        [
            -p0 - p1 + p3 + self.c_bar() + self.b_bar(),
            -p1 - p2 + p4,
            p1 - p3 - p4,
        ]
    }

    /// The sufficient condition under which the listed classes and their
    /// Serre duals are the whole locus.
    pub fn is_large(&self) -> bool {
        let [p0, p1, p2, p3, p4] = self.pi64();
        let c_last = *self.c.last().expect("validated");
        let b_last = *self.b.last().expect("validated");
        c_last.max(b_last) >= p0 + p1 + p2.max(p3) + p4
            && (p2 == 1 || c_last >= p0 - 1)
            && (p3 == 1 || b_last - self.b[0] >= p0 - 1)
    }
}

pub fn build_pic3(data: &PicThreeData) -> Result<Fan> {
    data.validate()?;
    let n = data.dim() + 3;
    let collections = data.primitive_collections();
    let mut cones = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let dropped = [a, b, c];
                if collections
                    .iter()
                    .all(|pc| pc.iter().any(|i| dropped.contains(i)))
                {
                    cones.push((0..n).filter(|i| !dropped.contains(i)).collect());
                }
            }
        }
    }
    fan_from_class_map(data.class_map(), cones)
}

/// Classes `(x, y, z)` with `x_min <= x <= x_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Segment {
    pub y: i64,
    pub z: i64,
    pub x_min: i64,
    pub x_max: i64,
}

impl Segment {
    pub fn contains(&self, c: &[i64]) -> bool {
        c[1] == self.y && c[2] == self.z && self.x_min <= c[0] && c[0] <= self.x_max
    }

    pub fn len(&self) -> usize {
        (self.x_max - self.x_min + 1).max(0) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self) -> impl Iterator<Item = [i64; 3]> + '_ {
        (self.x_min..=self.x_max).map(|x| [x, self.y, self.z])
    }
}

/// Full lines over two parallelograms in the `(y, z)` plane and the finite
/// segments of types A and B.
#[derive(Clone, Debug)]
pub struct Pic3Candidates {
    pub p1: Polyhedron,
    pub p2: Polyhedron,
    pub type_a: Vec<Segment>,
    pub type_b: Vec<Segment>,
}

impl Pic3Candidates {
    pub fn on_full_line(&self, y: &BigInt, z: &BigInt) -> bool {
        let yz = [y.clone(), z.clone()];
        self.p1.contains_int(&yz) || self.p2.contains_int(&yz)
    }
}

#[derive(Clone, Copy)]
enum Left {
    P4,
    P1,
}

#[derive(Clone, Copy)]
enum Right {
    MinusY,
    MinusOne,
}

pub fn pic3_candidates(data: &PicThreeData) -> Result<Pic3Candidates> {
    data.validate()?;
    let [p0, p1, p2, p3, p4] = data.pi64();
    let poly = |v: [[i64; 2]; 4]| {
        let v: Vec<_> = v.iter().map(|p| ints(p)).collect();
        Polyhedron::from_int_vertices(2, &v)
    };
    let par1 = poly([
        [-p1 - p2 - p3 + 2, p1 - 1],
        [-p1, p1 - 1],
        [-p2 + p4, -p3 - p4 + 1],
        [p3 + p4 - 2, -p3 - p4 + 1],
    ])?;
    let par2 = poly([
        [-p1 - p2 + 1, p1 + p2 - 2],
        [p4 - 1, -p4],
        [-p1 - p2 + 1, p1 - p3],
        [p4 - 1, -p2 - p3 - p4 + 2],
    ])?;

    use Left::*;
    use Right::*;
    let rows: Vec<(i64, i64, Left, Right)> = if p1 < p4 {
        vec![
            (-p3 - p4 + 1, -p4, P4, MinusY),
            (-p4 + 1, p1 - p4, P1, MinusY),
            (p1 - p4 + 1, 0, P4, MinusY),
            (1, p1 - 1, P4, MinusOne),
            (p1, p1 + p2 - 1, P1, MinusOne),
        ]
    } else if p1 > p4 {
        vec![
            (-p3 - p4 + 1, -p4, P4, MinusY),
            (-p4 + 1, 0, P1, MinusY),
            (1, p1 - p4, P1, MinusOne),
            (p1 - p4 + 1, p1 - 1, P4, MinusOne),
            (p1, p1 + p2 - 1, P1, MinusOne),
        ]
    } else {
        vec![
            (-p3 - p4 + 1, -p4, P4, MinusY),
            (-p4 + 1, 0, P1, MinusY),
            (1, p1 - 1, P4, MinusOne),
            (p1, p1 + p2 - 1, P1, MinusOne),
        ]
    };
    let mut type_a = Vec::new();
    for (lo, hi, left, right) in rows {
        for y in lo..=hi {
            let x_min = match left {
                P4 => -p0 - p4 - y + 1,
                P1 => -p0 - p1 + 1,
            };
            let x_max = match right {
                MinusY => -y - 1,
                MinusOne => -1,
            };
            type_a.push(Segment {
                y: -y,
                z: y,
                x_min,
                x_max,
            });
        }
    }

    let c_bar = data.c_bar();
    let b_bar = data.b_bar();
    let type_b = if p2 == 1 {
        (0..p3)
            .map(|t| Segment {
                y: -p1 - p2 - t,
                z: p1,
                x_min: -p0 - p1 + 1,
                x_max: -p1 - 1,
            })
            .collect()
    } else if p3 == 1 {
        (0..p2)
            .map(|t| {
                let shift = c_bar - t * (b_bar + 1);
                Segment {
                    y: -p1 - p2,
                    z: p1 + t,
                    x_min: -p0 - p1 + shift + 1,
                    x_max: -p1 + shift - 1,
                }
            })
            .collect()
    } else {
        vec![Segment {
            y: -p1 - p2,
            z: p1,
            x_min: -p0 - p1 + c_bar + 1,
            x_max: -p1 + c_bar - 1,
        }]
    };
    let keep = |v: Vec<Segment>| v.into_iter().filter(|s| !s.is_empty()).collect();
    Ok(Pic3Candidates {
        p1: par1,
        p2: par2,
        type_a: keep(type_a),
        type_b: keep(type_b),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClosedFormStatus {
    Immaculate,
    Maculate,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClosedFormVia {
    F,
    A,
    B,
    SerreDual,
    /// Not listed, and the parameters are large enough for the list to be complete.
    LargeParameters,
    Enumeration,
    /// Not listed and no fan was supplied to decide.
    Undecided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedFormAnswer {
    pub status: ClosedFormStatus,
    pub via: ClosedFormVia,
}

fn listed(cands: &Pic3Candidates, c: &[i64]) -> Option<ClosedFormVia> {
    if cands.type_a.iter().any(|s| s.contains(c)) {
        Some(ClosedFormVia::A)
    } else if cands.type_b.iter().any(|s| s.contains(c)) {
        Some(ClosedFormVia::B)
    } else {
        None
    }
}

/// Decides immaculacy from the listed classes. Classes that are not listed
/// are maculate when the parameters are large; otherwise `fan` (the output
/// of [`build_pic3`]) decides, or the answer is unknown without it.
pub fn pic3_immaculate_closed_form(
    data: &PicThreeData,
    class: &[BigInt],
    fan: Option<&Fan>,
) -> Result<ClosedFormAnswer> {
    use ClosedFormStatus::*;
    let cands = pic3_candidates(data)?;
    let answer = |status, via| Ok(ClosedFormAnswer { status, via });
    if cands.on_full_line(&class[1], &class[2]) {
        return answer(Immaculate, ClosedFormVia::F);
    }
    if let Some(c) = to_i64(class) {
        if let Some(via) = listed(&cands, &c) {
            return answer(Immaculate, via);
        }
        let k = data.canonical_class();
        let dual: Vec<i64> = (0..3).map(|i| k[i] - c[i]).collect();
        if listed(&cands, &dual).is_some() {
            return answer(Immaculate, ClosedFormVia::SerreDual);
        }
    }
    if data.is_large() {
        return answer(Maculate, ClosedFormVia::LargeParameters);
    }
    match fan {
        Some(x) => {
            let really = is_really_immaculate(x, &DivisorClass::free(class.to_vec()))?;
            answer(
                if really { Immaculate } else { Maculate },
                ClosedFormVia::Enumeration,
            )
        }
        None => answer(Unknown, ClosedFormVia::Undecided),
    }
}
