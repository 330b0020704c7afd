//! Exact rationals and their `{"num", "den"}` JSON form.

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Q = Ratio<i64>;

#[derive(Serialize, Deserialize)]
struct Repr {
    num: i64,
    den: i64,
}

pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
    Repr {
        num: *x.numer(),
        den: *x.denom(),
    }
    .serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
    let r = Repr::deserialize(d)?;
    if r.den == 0 {
        return Err(serde::de::Error::custom("zero denominator"));
    }
    Ok(Q::new(r.num, r.den))
}

pub mod option {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
        x.map(|v| Repr {
            num: *v.numer(),
            den: *v.denom(),
        })
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Q>, D::Error> {
        Option::<Repr>::deserialize(d)?
            .map(|r| {
                if r.den == 0 {
                    Err(serde::de::Error::custom("zero denominator"))
                } else {
                    Ok(Q::new(r.num, r.den))
                }
            })
            .transpose()
    }
}
