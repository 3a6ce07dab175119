#pragma once
// Shared helpers for the unit-test binaries.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "sode/class_catalog.hpp"
#include "sode/schema.hpp"

namespace testutil {

// Absolute-tolerance comparator (doctest's Approx is relative-only). The
// epsilon/scale knobs exist for interface compatibility and are ignored;
// only margin() matters here.
struct AbsApprox {
  double value;
  double tol = 0;
  explicit AbsApprox(double v) : value(v) {}
  AbsApprox& epsilon(double) { return *this; }
  AbsApprox& scale(double) { return *this; }
  AbsApprox& margin(double m) {
    tol = m;
    return *this;
  }
  friend bool operator==(double lhs, const AbsApprox& rhs) {
    return std::abs(lhs - rhs.value) <= rhs.tol;
  }
  friend bool operator==(const AbsApprox& lhs, double rhs) {
    return rhs == lhs;
  }
  friend bool operator!=(double lhs, const AbsApprox& rhs) {
    return !(lhs == rhs);
  }
  friend std::ostream& operator<<(std::ostream& os, const AbsApprox& a) {
    return os << "approx(" << a.value << " +/- " << a.tol << ")";
  }
};

// Catalog with k singleton classes: label "C<y>" gets LabelId y and the
// class {C<y>} gets ClassIndex y.
inline std::shared_ptr<sode::ClassCatalog> singleton_catalog(std::size_t k) {
  auto cat = std::make_shared<sode::ClassCatalog>();
  for (std::size_t y = 0; y < k; ++y) {
    sode::LabelId id = cat->intern_label("C" + std::to_string(y));
    cat->intern_class({id});
  }
  return cat;
}

inline sode::Instance make_instance(
    std::vector<std::pair<sode::AttrIndex, sode::AttrValue>> values,
    std::optional<sode::SeasonValue> season = std::nullopt) {
  sode::Instance x;
  x.values = std::move(values);
  x.season = season;
  return x;
}

// Directory for scratch files, removed on destruction.
struct TempDir {
  std::string path;
  TempDir() {
    char tmpl[] = "/tmp/sode_test_XXXXXX";
    if (!mkdtemp(tmpl)) std::abort();
    path = tmpl;
  }
  ~TempDir() {
    std::string cmd = "rm -rf '" + path + "'";
    if (std::system(cmd.c_str()) != 0) std::perror("TempDir cleanup");
  }
  std::string file(const std::string& name) const { return path + "/" + name; }
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline void spit(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

// Environment lookup with a loud failure, for paths wired in by CMake.
inline std::string require_env(const char* name) {
  const char* v = std::getenv(name);
  if (!v) {
    std::fprintf(stderr, "missing required environment variable %s\n", name);
    std::abort();
  }
  return v;
}

struct CommandResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr interleaved
};

// Runs a shell command, capturing combined output.
inline CommandResult run_command(const std::string& cmd) {
  TempDir dir;
  std::string out_path = dir.file("out.txt");
  std::string full = cmd + " >'" + out_path + "' 2>&1";
  int status = std::system(full.c_str());
  CommandResult r;
  r.output = slurp(out_path);
  if (status < 0)
    r.exit_code = -1;
  else
    r.exit_code = WEXITSTATUS(status);
  return r;
}

}  // namespace testutil
