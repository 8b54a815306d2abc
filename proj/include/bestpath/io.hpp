#ifndef BESTPATH_IO_HPP
#define BESTPATH_IO_HPP

#include <string>

namespace bestpath {

// Whole-file read; DataError when unreadable.
std::string slurp_file(const std::string& path);

// Write via a sibling temp file and rename, so readers never observe a
// partially written artifact.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace bestpath

#endif
