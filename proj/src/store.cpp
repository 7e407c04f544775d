#include "algid/store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>
#include <system_error>

#include "algid/digest.hpp"
#include "algid/errors.hpp"

namespace algid {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_all(int fd, std::string_view bytes, const fs::path& path) {
  const char* data = bytes.data();
  std::size_t left = bytes.size();
  while (left > 0) {
    const ssize_t n = ::write(fd, data, left);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error(Errc::Io, "write " + path.string() + ": " + std::strerror(errno));
    }
    data += n;
    left -= static_cast<std::size_t>(n);
  }
}

fs::path temp_name(const fs::path& dir) {
  static std::atomic<std::uint64_t> counter{0};
  thread_local std::mt19937_64 rng{std::random_device{}()};
  return dir / (".tmp-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) + "-" +
                std::to_string(rng()));
}

}  // namespace

Store::Store(fs::path root, const GroupParams& version) : root_(std::move(root)), version_(&version) {
  if (!version.has_digest()) {
    throw Error(Errc::NoDigestSupport, "stores need a version with digests");
  }
}

void Store::require_canonical(std::string_view digest) const { (void)decode(digest, *version_); }

fs::path Store::entry_path(std::string_view digest) const {
  return root_ / std::string(digest.substr(0, 2)) / (std::string(digest.substr(2)) + ".bin");
}

fs::path Store::alias_path(std::string_view digest) const {
  return root_ / std::string(digest.substr(0, 2)) / (std::string(digest.substr(2)) + ".alias");
}

// Writes `bytes` to `target` unless it already exists. Returns normally when
// the target exists afterwards (ours or a concurrent writer's).
void Store::publish(const fs::path& target, std::string_view bytes) const {
  std::error_code ec;
  fs::create_directories(target.parent_path(), ec);
  if (ec) throw Error(Errc::Io, "create " + target.parent_path().string() + ": " + ec.message());

  const fs::path tmp = temp_name(target.parent_path());
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_EXCL, 0644);
  if (fd < 0) throw Error(Errc::Io, "open " + tmp.string() + ": " + std::strerror(errno));
  try {
    write_all(fd, bytes, tmp);
    if (::fsync(fd) != 0) throw Error(Errc::Io, "fsync " + tmp.string() + ": " + std::strerror(errno));
  } catch (...) {
    ::close(fd);
    fs::remove(tmp, ec);
    throw;
  }
  ::close(fd);

  fs::create_hard_link(tmp, target, ec);
  std::error_code ignored;
  fs::remove(tmp, ignored);
  if (ec && ec != std::errc::file_exists) {
    throw Error(Errc::Io, "link " + target.string() + ": " + ec.message());
  }
}

void Store::put(std::string_view digest, std::string_view payload) {
  require_canonical(digest);
  const fs::path target = entry_path(digest);
  if (!fs::exists(target)) publish(target, payload);
  if (read_file(target) != payload) {
    throw Error(Errc::ContentConflict, "digest " + std::string(digest) + " already stores different content");
  }
}

std::string Store::get(std::string_view digest) const {
  require_canonical(digest);
  const fs::path target = entry_path(digest);
  if (!fs::exists(target)) throw Error(Errc::NotFound, "no entry for " + std::string(digest));
  return read_file(target);
}

bool Store::has(std::string_view digest) const {
  require_canonical(digest);
  return fs::exists(entry_path(digest));
}

void Store::alias_put(std::string_view from, std::string_view to) {
  require_canonical(from);
  require_canonical(to);
  if (from == to) throw Error(Errc::AliasRejected, "a digest cannot alias itself");
  if (fs::exists(alias_path(to))) {
    throw Error(Errc::AliasRejected, "target " + std::string(to) + " is itself an alias");
  }
  // Nothing may already point at `from`, or resolution would need two hops.
  if (fs::exists(root_)) {
    for (const auto& entry : fs::recursive_directory_iterator(root_)) {
      if (!entry.is_regular_file() || entry.path().extension() != ".alias") continue;
      std::string target = read_file(entry.path());
      if (!target.empty() && target.back() == '\n') target.pop_back();
      if (target == from) {
        throw Error(Errc::AliasRejected, std::string(from) + " is already the target of an alias");
      }
    }
  }
  const std::string line = std::string(to) + '\n';
  const fs::path path = alias_path(from);
  if (!fs::exists(path)) publish(path, line);
  if (read_file(path) != line) {
    throw Error(Errc::AliasRejected, std::string(from) + " already aliases a different digest");
  }
}

std::string Store::resolve(std::string_view digest) const {
  require_canonical(digest);
  const fs::path path = alias_path(digest);
  if (!fs::exists(path)) return std::string(digest);
  std::string target = read_file(path);
  if (!target.empty() && target.back() == '\n') target.pop_back();
  return target;
}

}  // namespace algid
