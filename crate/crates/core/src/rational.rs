//! Serialization helpers for exact ratios, written as `"num/den"`.

use num_rational::Ratio;
use serde::Serializer;

pub fn format_ratio<T: std::fmt::Display + Clone + num_integer::Integer>(r: &Ratio<T>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn serialize_ratio<S, T>(r: &Ratio<T>, s: S) -> Result<S::Ok, S::Error>
where
    S: Serializer,
    T: std::fmt::Display + Clone + num_integer::Integer,
{
    s.serialize_str(&format_ratio(r))
}

pub fn serialize_opt_ratio<S, T>(r: &Option<Ratio<T>>, s: S) -> Result<S::Ok, S::Error>
where
    S: Serializer,
    T: std::fmt::Display + Clone + num_integer::Integer,
{
    match r {
        Some(r) => s.serialize_some(&format_ratio(r)),
        None => s.serialize_none(),
    }
}
