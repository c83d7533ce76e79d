// Copyright 2026 The PromptLock Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "promptlock/store/store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "promptlock/error.hpp"

namespace promptlock::store {
namespace {

[[noreturn]] void throw_io(const std::string& what) {
  throw Error(Errc::io_error, what + ": " + std::strerror(errno));
}

void write_all(int fd, const std::uint8_t* data, std::size_t size) {
  while (size > 0) {
    const ssize_t n = ::write(fd, data, size);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw_io("write");
    }
    data += n;
    size -= static_cast<std::size_t>(n);
  }
}

void sync_fd(int fd) {
  if (::fdatasync(fd) != 0) throw_io("fdatasync");
}

void sync_dir(const std::filesystem::path& dir) {
  const int dfd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY);
  if (dfd < 0) throw_io("open dir");
  const int rc = ::fsync(dfd);
  ::close(dfd);
  if (rc != 0) throw_io("fsync dir");
}

Bytes read_file(int fd) {
  Bytes out;
  std::uint8_t buf[1 << 16];
  if (::lseek(fd, 0, SEEK_SET) < 0) throw_io("lseek");
  for (;;) {
    const ssize_t n = ::read(fd, buf, sizeof buf);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw_io("read");
    }
    if (n == 0) break;
    out.insert(out.end(), buf, buf + n);
  }
  return out;
}

}  // namespace

Store::Store(std::filesystem::path dir, StoreOptions options)
    : dir_(std::move(dir)), options_(std::move(options)) {}

Store::~Store() {
  if (fd_ >= 0) ::close(fd_);
}

std::unique_ptr<Store> Store::open(const std::filesystem::path& dir, StoreOptions options) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(Errc::io_error, "cannot create store directory " + dir.string());
  std::unique_ptr<Store> s(new Store(dir, std::move(options)));
  s->recover();
  return s;
}

void Store::recover() {
  const auto path = log_path();
  fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0600);
  if (fd_ < 0) throw_io("open " + path.string());

  Bytes file = read_file(fd_);
  const bool fresh = file.size() < kFileMagic.size() &&
                     std::string_view(reinterpret_cast<const char*>(file.data()), file.size()) ==
                         kFileMagic.substr(0, file.size());
  if (fresh) {
    // New file, or a crash while the magic was being written.
    if (::ftruncate(fd_, 0) != 0) throw_io("ftruncate");
    if (::lseek(fd_, 0, SEEK_SET) < 0) throw_io("lseek");
    write_all(fd_, reinterpret_cast<const std::uint8_t*>(kFileMagic.data()), kFileMagic.size());
    sync_fd(fd_);
    sync_dir(dir_);
    return;
  }

  const ScanResult scan = scan_log(file);
  for (const auto& r : scan.records) {
    if (r.kind == RecordKind::ledger_entry) {
      if (r.version != ledger_.size() + 1) {
        throw Error(Errc::store_corrupt, "ledger sequence gap");
      }
      ledger_.push_back(r);
      continue;
    }
    auto [it, inserted] = index_.try_emplace(IndexKey{r.kind, r.key}, r);
    if (!inserted) {
      if (r.version != it->second.version + 1) {
        throw Error(Errc::store_corrupt, "record version does not advance by one");
      }
      it->second = r;
      ++obsolete_;
    } else if (r.version == 0) {
      // After compaction a key's first record may carry any version >= 1.
      throw Error(Errc::store_corrupt, "record version zero");
    }
  }
  if (scan.torn_tail) {
    if (::ftruncate(fd_, static_cast<off_t>(scan.valid_bytes)) != 0) throw_io("ftruncate");
    sync_fd(fd_);
  }
  if (::lseek(fd_, 0, SEEK_END) < 0) throw_io("lseek");
}

void Store::check_alive() const {
  if (dead_) throw Error(Errc::io_error, "store is unusable after a failed write");
}

void Store::append(const Bytes& encoded) {
  if (options_.write_fault) {
    const std::size_t allowed = std::min(options_.write_fault(encoded.size()), encoded.size());
    if (allowed < encoded.size()) {
      write_all(fd_, encoded.data(), allowed);
      sync_fd(fd_);
      dead_ = true;
      throw SimulatedCrash();
    }
  }
  try {
    write_all(fd_, encoded.data(), encoded.size());
    if (options_.sync_writes) sync_fd(fd_);
  } catch (...) {
    dead_ = true;
    throw;
  }
}

std::optional<Record> Store::get(RecordKind kind, std::string_view key) const {
  std::shared_lock lock(index_mu_);
  const auto it = index_.find(IndexKey{kind, std::string(key)});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint64_t> Store::compare_and_swap(RecordKind kind, std::string_view key,
                                                     std::uint64_t expected_version,
                                                     const nlohmann::json& payload) {
  if (kind == RecordKind::ledger_entry) {
    throw Error(Errc::invalid_argument, "ledger entries are append-only");
  }
  std::lock_guard write_lock(write_mu_);
  check_alive();
  const IndexKey ik{kind, std::string(key)};
  std::uint64_t current = 0;
  {
    std::shared_lock lock(index_mu_);
    if (auto it = index_.find(ik); it != index_.end()) current = it->second.version;
  }
  if (current != expected_version) return std::nullopt;

  Record r{kind, ik.second, current + 1, payload.dump()};
  append(encode_record(r));
  {
    std::unique_lock lock(index_mu_);
    if (current != 0) ++obsolete_;
    index_[ik] = std::move(r);
  }
  maybe_compact();
  return current + 1;
}

std::uint64_t Store::append_ledger(const nlohmann::json& entry) {
  std::lock_guard write_lock(write_mu_);
  check_alive();
  Record r{RecordKind::ledger_entry, "", ledger_.size() + 1, entry.dump()};
  append(encode_record(r));
  std::unique_lock lock(index_mu_);
  ledger_.push_back(std::move(r));
  return ledger_.size();
}

std::vector<Record> Store::scan(RecordKind kind) const {
  std::shared_lock lock(index_mu_);
  std::vector<Record> out;
  for (const auto& [k, r] : index_) {
    if (k.first == kind) out.push_back(r);
  }
  return out;
}

std::vector<Record> Store::ledger() const {
  std::shared_lock lock(index_mu_);
  return ledger_;
}

std::uint64_t Store::ledger_size() const {
  std::shared_lock lock(index_mu_);
  return ledger_.size();
}

void Store::maybe_compact() {
  if (options_.compact_after_obsolete == 0 || obsolete_ < options_.compact_after_obsolete) {
    return;
  }
  // Called with write_mu_ held.
  const auto tmp = dir_ / (std::string(kLogFileName) + ".compact");
  const int tfd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0600);
  if (tfd < 0) throw_io("open " + tmp.string());
  try {
    Bytes out(kFileMagic.begin(), kFileMagic.end());
    {
      std::shared_lock lock(index_mu_);
      for (const auto& [k, r] : index_) {
        const auto enc = encode_record(r);
        out.insert(out.end(), enc.begin(), enc.end());
      }
      for (const auto& r : ledger_) {
        const auto enc = encode_record(r);
        out.insert(out.end(), enc.begin(), enc.end());
      }
    }
    write_all(tfd, out.data(), out.size());
    sync_fd(tfd);
  } catch (...) {
    ::close(tfd);
    throw;
  }
  ::close(tfd);
  std::filesystem::rename(tmp, log_path());
  sync_dir(dir_);
  ::close(fd_);
  fd_ = ::open(log_path().c_str(), O_RDWR | O_CLOEXEC);
  if (fd_ < 0) {
    dead_ = true;
    throw_io("reopen after compaction");
  }
  if (::lseek(fd_, 0, SEEK_END) < 0) throw_io("lseek");
  obsolete_ = 0;
}

void Store::compact() {
  std::lock_guard write_lock(write_mu_);
  check_alive();
  const auto saved = options_.compact_after_obsolete;
  options_.compact_after_obsolete = 1;
  obsolete_ = std::max<std::size_t>(obsolete_, 1);
  maybe_compact();
  options_.compact_after_obsolete = saved;
}

}  // namespace promptlock::store
