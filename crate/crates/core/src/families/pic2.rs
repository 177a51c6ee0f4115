use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::invalid;
use super::splitting::{build_splitting, SplittingData};
use crate::error::Result;
use crate::fan::Fan;

/// Class map `[[1,...,1, c], [0,...,0, 1,...,1]]` with `l1` and `l2` columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PicTwoData {
    pub l1: usize,
    pub l2: usize,
    /// `0 = c[0] >= c[1] >= ... >= c[l2 - 1]`.
    pub c: Vec<i64>,
}

impl PicTwoData {
    pub fn validate(&self) -> Result<()> {
        if self.l1 < 2 || self.l2 < 2 {
            return Err(invalid("both blocks need at least two rays"));
        }
        if self.c.len() != self.l2 {
            return Err(invalid(format!("c needs {} entries", self.l2)));
        }
        if self.c[0] != 0 {
            return Err(invalid("c must start with 0"));
        }
        if self.c.windows(2).any(|w| w[1] > w[0]) {
            return Err(invalid("c must be weakly decreasing"));
        }
        Ok(())
    }

    pub fn c_bar(&self) -> i64 {
        self.c.iter().sum()
    }

    pub fn c_last(&self) -> i64 {
        *self.c.last().expect("validated")
    }

    pub fn is_fano(&self) -> bool {
        -self.c_bar() < self.l1 as i64
    }

    pub fn as_splitting(&self) -> SplittingData {
        SplittingData {
            l: vec![self.l1, self.l2],
            c: vec![vec![self.c.clone()], vec![]],
        }
    }
}

pub fn build_pic2(data: &PicTwoData) -> Result<Fan> {
    data.validate()?;
    build_splitting(&data.as_splitting())
}

/// Membership of `(x, y)` in the immaculate locus.
pub fn pic2_immaculate(data: &PicTwoData, class: &[BigInt]) -> bool {
    let (x, y) = (&class[0], &class[1]);
    let l1 = BigInt::from(data.l1);
    let l2 = BigInt::from(data.l2);
    let zero = BigInt::from(0);
    let c_last = BigInt::from(data.c_last());
    let c_bar = BigInt::from(data.c_bar());
    if -&l2 < *y && *y < zero {
        return true;
    }
    if *y >= zero && -&l1 < *x && *x < &c_last * y {
        return true;
    }
    if *y <= -&l2 {
        let s = x + &c_bar;
        return zero > s && s > &c_last * (y + &l2) - &l1;
    }
    false
}
