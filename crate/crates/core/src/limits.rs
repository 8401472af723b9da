//! Size guards for expanded integer systems.

/// Environment variable overriding the largest expanded dimension any single
/// integer system may reach.
pub const SIZE_LIMIT_VAR: &str = "AMITSUR_SIZE_LIMIT";

pub const DEFAULT_SIZE_LIMIT: usize = 4096;

pub fn size_limit() -> usize {
    std::env::var(SIZE_LIMIT_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_SIZE_LIMIT)
}

pub fn check(what: &str, dim: usize) -> crate::Result<()> {
    let lim = size_limit();
    if dim > lim {
        return Err(crate::Error::SizeGuard(format!(
            "{} needs dimension {} > limit {} (set {} to raise)",
            what, dim, lim, SIZE_LIMIT_VAR
        )));
    }
    Ok(())
}
