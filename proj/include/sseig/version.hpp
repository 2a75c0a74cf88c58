#ifndef SSEIG_VERSION_HPP
#define SSEIG_VERSION_HPP

namespace sseig {

inline constexpr const char* kVersion = "0.1.0";

// Version of the JSON metadata/manifest schema written next to vector outputs.
inline constexpr int kMetadataSchemaVersion = 1;

}  // namespace sseig

#endif
