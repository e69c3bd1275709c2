#pragma once

#include <string>

#include "skein/tl.hpp"

namespace skein {

// Directory for idempotent cache files; empty string disables the disk layer.
// Initialized from $SKEIN_CACHE_DIR when set.
void set_cache_dir(const std::string& dir);
std::string cache_dir();
int clear_disk_cache();  // removes cache files, returns how many
void clear_memory_cache();

// The m-strand Jones-Wenzl idempotent over Q(zeta_M). Throws
// SingularRecursion when a quantum integer in the recursion vanishes.
TLElement jones_wenzl(const FieldPtr& field, int m);

}  // namespace skein
