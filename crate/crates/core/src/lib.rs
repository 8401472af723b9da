pub mod amitsur;
pub mod cyclofield;
pub mod error;
pub mod extcalc;
pub mod fingroup;
pub mod cohom;
pub mod formats;
pub mod gmod;
pub mod intlat;
pub mod limits;
pub mod resolve;

pub use error::{Error, Result};
pub use fingroup::{FinGroup, Subgroup};
pub use gmod::{GMap, GModule};
pub use intlat::{FgAbGroup, Int, IntMatrix};
pub use resolve::{FreeResolution, GroupRingMatrix};
