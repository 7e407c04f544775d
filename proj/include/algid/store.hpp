#pragma once

// File-backed content-addressable store keyed by digests.
//
// Layout under the root directory:
//   <d[0..2)>/<d[2..)>.bin     payload for digest d
//   <d[0..2)>/<d[2..)>.alias   one line: the digest d resolves to
//
// Writers publish entries with a hard link from a fully written temporary
// file, so readers see either nothing or the complete payload, and a second
// writer can never replace an existing entry.

#include <filesystem>
#include <string>
#include <string_view>

#include "algid/group.hpp"

namespace algid {

class Store {
 public:
  Store(std::filesystem::path root, const GroupParams& version);

  const std::filesystem::path& root() const noexcept { return root_; }
  const GroupParams& version() const noexcept { return *version_; }

  /// Idempotent for identical payloads; Errc::ContentConflict otherwise.
  void put(std::string_view digest, std::string_view payload);
  /// Errc::NotFound when absent.
  std::string get(std::string_view digest) const;
  bool has(std::string_view digest) const;

  /// Links `from` to `to`. Rejected (Errc::AliasRejected) when it would
  /// create a chain: `to` already aliased, or something already aliases `from`.
  void alias_put(std::string_view from, std::string_view to);
  /// Follows at most one alias; unaliased digests resolve to themselves.
  std::string resolve(std::string_view digest) const;

  std::filesystem::path entry_path(std::string_view digest) const;
  std::filesystem::path alias_path(std::string_view digest) const;

 private:
  void require_canonical(std::string_view digest) const;
  void publish(const std::filesystem::path& target, std::string_view bytes) const;

  std::filesystem::path root_;
  const GroupParams* version_;
};

}  // namespace algid
