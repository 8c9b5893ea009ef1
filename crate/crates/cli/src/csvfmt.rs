//! CSV rendering.  Enclosure endpoints are printed as decimals with
//! directional rounding (lows down, highs up) so the printed intervals
//! remain enclosing; '.' decimal separator, no locale.

use groundstate_core::num::dyadic::Round;
use groundstate_core::num::interval::decimal_of_rat;
use groundstate_core::num::{Enclosure, Rat};

pub const DIGITS: u32 = 17;

pub fn dec_lo(r: &Rat) -> String {
    decimal_of_rat(r, DIGITS, Round::Floor)
}

pub fn dec_hi(r: &Rat) -> String {
    decimal_of_rat(r, DIGITS, Round::Ceil)
}

pub fn enclosure_cols(e: &Enclosure) -> (String, String) {
    (dec_lo(&e.lo_rat()), dec_hi(&e.hi_rat()))
}

pub struct Csv {
    out: String,
}

impl Csv {
    pub fn new(header: &str) -> Csv {
        let mut out = String::new();
        out.push_str(header);
        out.push('\n');
        Csv { out }
    }

    pub fn comment(mut self, line: &str) -> Csv {
        let mut with = String::from("# ");
        with.push_str(line);
        with.push('\n');
        with.push_str(&self.out);
        self.out = with;
        self
    }

    pub fn row(&mut self, cols: &[String]) {
        self.out.push_str(&cols.join(","));
        self.out.push('\n');
    }

    pub fn finish(self) -> String {
        self.out
    }
}
