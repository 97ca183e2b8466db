//! Doc tests for the listings in `book/src`.

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/roots.md")]
mod roots {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/characters.md")]
mod characters {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/quivers.md")]
mod quivers {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/parameters.md")]
mod parameters {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/stability.md")]
mod stability {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/vortex.md")]
mod vortex {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod cli {}
