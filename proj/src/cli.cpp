#include "isoprofile/cli.hpp"

#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

#include "isoprofile/cache.hpp"
#include "isoprofile/enumerate.hpp"
#include "isoprofile/io.hpp"

namespace isoprofile {

namespace {

using nlohmann::ordered_json;

void check_config(const JobConfig& c) {
  if (c.min_n < 0) throw InputError("--min-n must be nonnegative");
  if (c.min_n > c.max_n) throw InputError("volume range is empty");
  if (c.budget.max_fill_volume <= 0) throw InputError("--max-fill-volume must be positive");
  if (c.budget.max_nodes == 0) throw InputError("--max-nodes must be positive");
  if (c.budget.workers == 0) throw InputError("--workers must be positive");
  if (c.oracle_radius && *c.oracle_radius == 0) {
    throw InputError("--oracle-radius must be positive");
  }
  if (c.circles < 1) throw InputError("--circles must be at least 1");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class Job {
 public:
  Job(const JobConfig& config, std::ostream& out, std::ostream& err)
      : config_(config), out_(out), err_(err) {
    if (config.use_cache) {
      auto path = config.cache_path ? config.cache_path : default_cache_path();
      if (path) cache_.emplace(*path);
    }
  }

  void execute() {
    const auto& cmd = config_.command;
    if (cmd == "validate") return validate_command();
    if (cmd == "enumerate") return enumerate_command();
    if (cmd == "fv") return fv_command();
    if (cmd == "psi") {
      return profile_command(TableKind::kPsi, [this](int n) {
        return psi_table(n, *complex_, config_.budget);
      });
    }
    if (cmd == "phi") {
      return profile_command(TableKind::kPhi, [this](int n) {
        return phi_table(n, *complex_, config_.budget);
      });
    }
    if (cmd == "finite-profile") {
      return profile_command(TableKind::kFinitePhi, [this](int n) {
        return finite_profile_table(n, *complex_, config_.budget);
      });
    }
    if (cmd == "chain2-bound") return bound_command(TableKind::kChain2Bound);
    if (cmd == "disk-bound") return bound_command(TableKind::kDiskBound);
    throw InputError("unknown command \"" + cmd + "\"");
  }

 private:
  void load() {
    if (config_.input.empty()) throw InputError("--input is required");
    LoadedSkeleton loaded =
        load_skeleton_file(config_.input, {config_.oracle_radius});
    fingerprint_ = fingerprint(loaded.spec, *loaded.oracle);
    complex_.emplace(std::move(loaded.spec), std::move(loaded.oracle));
    validate(*complex_);
  }

  void finish() {
    if (!cache_) return;
    cache_->save();
    for (const auto& w : cache_->warnings()) err_ << "warning: " << w << "\n";
  }

  void validate_command() {
    load();
    const auto& spec = complex_->spec();
    if (config_.format == OutputFormat::kJson) {
      ordered_json j;
      j["valid"] = true;
      j["dim"] = spec.q;
      std::vector<std::size_t> counts;
      for (int t = 0; t <= spec.q; ++t) counts.push_back(spec.count(t));
      j["cells"] = counts;
      j["oracle"] = complex_->oracle().id();
      j["fingerprint"] = fingerprint_;
      out_ << j.dump(2) << "\n";
    } else if (config_.format == OutputFormat::kCsv) {
      out_ << "dim,cells\n";
      for (int t = 0; t <= spec.q; ++t) out_ << t << "," << spec.count(t) << "\n";
    } else {
      out_ << "valid " << spec.q << "-skeleton, cells per dimension:";
      for (int t = 0; t <= spec.q; ++t) out_ << " " << spec.count(t);
      out_ << "\noracle " << complex_->oracle().id() << "\nfingerprint "
           << fingerprint_ << "\n";
    }
  }

  void enumerate_command() {
    load();
    const int q = complex_->top_dim();
    const int dim = config_.dim == 0 ? q - 1 : config_.dim;
    const EnumerationLimits limits{config_.budget.max_nodes, config_.budget.workers};
    const ChainClassSet set =
        config_.cycles_only
            ? connected_cycles_up_to_action(dim, config_.max_n, *complex_, limits)
            : connected_chains_up_to_action(dim, config_.max_n, *complex_, limits);
    const auto counts = set.counts_by_volume();
    const char* what = config_.cycles_only ? "cycles" : "chains";

    if (config_.format == OutputFormat::kCsv) {
      out_ << "n,count\n";
      for (int n = config_.min_n; n <= config_.max_n; ++n) {
        out_ << n << "," << counts[n] << "\n";
      }
      return;
    }
    std::map<int, std::vector<std::string>> reps;
    for (const auto& c : set.representatives) {
      const int n = static_cast<int>(norm(c));
      if (n >= config_.min_n) reps[n].push_back(format_chain(c, *complex_));
    }
    if (config_.format == OutputFormat::kJson) {
      ordered_json j;
      j["kind"] = "Enumeration";
      j["objects"] = what;
      j["dim"] = dim;
      j["fingerprint"] = fingerprint_;
      ordered_json cj = ordered_json::object();
      ordered_json rj = ordered_json::object();
      for (int n = config_.min_n; n <= config_.max_n; ++n) {
        cj[std::to_string(n)] = counts[n];
        rj[std::to_string(n)] = reps[n];
      }
      j["counts"] = cj;
      j["representatives"] = rj;
      out_ << j.dump(2) << "\n";
      return;
    }
    out_ << "connected " << dim << "-" << what << " up to translation, norm "
         << config_.min_n << ".." << config_.max_n << "\n";
    for (int n = config_.min_n; n <= config_.max_n; ++n) {
      out_ << "norm " << n << ": " << counts[n] << "\n";
      for (const auto& r : reps[n]) out_ << "  " << r << "\n";
    }
  }

  void fv_command() {
    load();
    if (config_.cycle.empty()) throw InputError("fv needs --cycle");
    const Chain cycle =
        parse_chain(config_.cycle, *complex_, complex_->top_dim() - 1);
    const std::string subject = format_chain(cycle, *complex_);
    const int n = static_cast<int>(norm(cycle));
    const std::string key =
        ResultCache::key(fingerprint_, TableKind::kFV, n, config_.budget, subject);

    ProfileTable table{TableKind::kFV, fingerprint_, config_.budget, {}};
    std::optional<ProfileEntry> entry;
    if (cache_) entry = cache_->lookup(key, TableKind::kFV, n, &*complex_, &cycle);
    if (!entry) {
      Filling f = filling_volume(cycle, *complex_, config_.budget);
      entry.emplace();
      entry->value = f.volume;
      entry->witnesses.emplace_back(cycle, std::move(f));
      if (cache_) cache_->store(key, *entry, &*complex_);
    }
    table.entries[n] = std::move(*entry);
    finish();
    print_table(table, &*complex_);
  }

  void profile_command(TableKind kind,
                       const std::function<std::vector<ProfileEntry>(int)>& compute) {
    load();
    lookup_or_compute(kind, &*complex_, fingerprint_, {}, [&](int max_n) {
      auto v = compute(max_n);
      std::map<int, ProfileEntry> m;
      for (int n = 0; n <= max_n; ++n) m[n] = std::move(v[n]);
      return m;
    });
  }

  void bound_command(TableKind kind) {
    if (config_.delta.empty()) throw InputError("--delta is required");
    const std::string text = read_file(config_.delta);
    const DeltaTable delta = parse_delta_table(text);
    std::string canonical;
    for (const auto& [n, v] : delta) {
      canonical += std::to_string(n) + "," + std::to_string(v) + "\n";
    }
    const std::string fp = sha256_hex("delta\n" + canonical);
    const std::string subject =
        kind == TableKind::kDiskBound ? "circles=" + std::to_string(config_.circles) : "";
    lookup_or_compute(kind, nullptr, fp, subject, [&](int max_n) {
      std::map<int, ProfileEntry> m;
      for (int n = config_.min_n; n <= max_n; ++n) {
        m[n].value = kind == TableKind::kChain2Bound
                         ? chain2_bound(delta, n)
                         : disk_combination(delta, config_.circles, n);
      }
      return m;
    });
  }

  void lookup_or_compute(TableKind kind, const CellComplex* complex,
                         const std::string& fp, const std::string& subject,
                         const std::function<std::map<int, ProfileEntry>(int)>& compute) {
    ProfileTable table{kind, fp, config_.budget, {}};
    bool complete = static_cast<bool>(cache_);
    if (cache_) {
      for (int n = config_.min_n; n <= config_.max_n && complete; ++n) {
        const auto key = ResultCache::key(fp, kind, n, config_.budget, subject);
        if (auto hit = cache_->lookup(key, kind, n, complex)) {
          table.entries[n] = std::move(*hit);
        } else {
          complete = false;
        }
      }
    }
    if (!complete) {
      table.entries.clear();
      auto computed = compute(config_.max_n);
      for (auto& [n, entry] : computed) {
        if (cache_) {
          cache_->store(ResultCache::key(fp, kind, n, config_.budget, subject),
                        entry, complex);
        }
        if (n >= config_.min_n) table.entries[n] = std::move(entry);
      }
    }
    finish();
    print_table(table, complex);
  }

  void print_table(const ProfileTable& table, const CellComplex* complex) {
    switch (config_.format) {
      case OutputFormat::kJson:
        out_ << table_to_json(table, complex).dump(2) << "\n";
        return;
      case OutputFormat::kCsv:
        out_ << table_to_csv(table);
        return;
      case OutputFormat::kHuman:
        break;
    }
    out_ << table_kind_name(table.kind) << "  fingerprint "
         << table.fingerprint.substr(0, 16) << "\n";
    if (complex) {
      out_ << "budget: fill volume <= " << table.budget.max_fill_volume
           << ", nodes <= " << table.budget.max_nodes << "\n";
    }
    out_ << std::setw(6) << "n" << "  value\n";
    for (const auto& [n, e] : table.entries) {
      out_ << std::setw(6) << n << "  " << e.value << "\n";
    }
    if (complex) {
      bool header = false;
      for (const auto& [n, e] : table.entries) {
        if (e.witnesses.empty()) continue;
        if (!header) out_ << "witnesses\n";
        header = true;
        out_ << "  n = " << n;
        if (!e.partition.empty()) {
          out_ << ", partition";
          for (const int p : e.partition) out_ << " " << p;
        }
        out_ << "\n";
        for (const auto& [cycle, filling] : e.witnesses) {
          out_ << "    cycle   " << format_chain(cycle, *complex) << "\n"
               << "    filling " << format_chain(filling.witness, *complex)
               << "  (volume " << filling.volume << ")\n";
        }
      }
      if (complex->top_dim() >= 4) {
        out_ << "note: when this skeleton comes from a closed aspherical "
                "manifold M of dimension q >= 4, the chain profile above is "
                "also the cellular isoperimetric profile of M.\n";
      }
    }
  }

  const JobConfig& config_;
  std::ostream& out_;
  std::ostream& err_;
  std::optional<ResultCache> cache_;
  std::optional<CellComplex> complex_;
  std::string fingerprint_;
};

}  // namespace

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse:
      return 2;
    case ErrorKind::kOracleUndecided:
      return 3;
    case ErrorKind::kBudgetExceeded:
      return 4;
    case ErrorKind::kInvalidSkeleton:
      return 5;
    case ErrorKind::kWrongAlgorithm:
      return 6;
    case ErrorKind::kInput:
    case ErrorKind::kAlphabet:
      return 7;
    case ErrorKind::kOverflow:
      return 8;
  }
  return 1;
}

int run(const JobConfig& config, std::ostream& out, std::ostream& err) {
  try {
    check_config(config);
    Job job(config, out, err);
    job.execute();
    return 0;
  } catch (const Error& e) {
    err << "error (" << error_kind_name(e.kind()) << "): " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace isoprofile
