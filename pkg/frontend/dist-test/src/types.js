// Wire types mirroring the service's document schema.
export const INDEX_NAMES = ["pi", "u", "f", "pri", "iu", "gq"];
export const UNMEASURED = "unmeasured";
