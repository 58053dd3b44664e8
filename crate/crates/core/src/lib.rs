pub mod conway;
pub mod number;
pub mod ordinal;
pub mod signexp;
pub mod structures;
pub mod syntax;
