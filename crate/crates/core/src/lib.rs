//! Monogenic orders and Frobenius-type generator families over function
//! fields of positive characteristic.

pub mod algebra;
pub mod error;
pub mod frobsearch;
pub mod funcfield;
pub mod gf;
pub mod monorder;
pub mod parse;
pub mod tower;
pub mod unitgrp;
pub mod verify;

pub use error::{Error, Result};
pub use funcfield::{BivarPoly, Place, PlaceSet, Poly, RatFunc};
pub use gf::{Fq, FqCtx, FqElem};
