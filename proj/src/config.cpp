#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "chanpred/experiment.hpp"
#include "chanpred/rng.hpp"
#include "chanpred/toml_lite.hpp"

namespace chanpred {

namespace {

class ConfigReader {
 public:
  explicit ConfigReader(toml::Table table) : table_(std::move(table)) {}

  const toml::Value* find(const std::string& key) {
    consumed_.insert(key);
    const auto it = table_.find(key);
    return it == table_.end() ? nullptr : &it->second;
  }

  template <typename T, typename Fn>
  void read(const std::string& key, T& dst, Fn&& convert) {
    if (const toml::Value* v = find(key)) {
      try {
        dst = convert(*v);
      } catch (const std::exception& e) {
        throw std::runtime_error("config: key '" + key + "': " + e.what());
      }
    }
  }

  void read_int(const std::string& key, int& dst) {
    read(key, dst, [](const toml::Value& v) { return static_cast<int>(v.as_integer()); });
  }
  void read_long(const std::string& key, long& dst) {
    read(key, dst, [](const toml::Value& v) { return static_cast<long>(v.as_integer()); });
  }
  void read_u64(const std::string& key, std::uint64_t& dst) {
    read(key, dst,
         [](const toml::Value& v) { return static_cast<std::uint64_t>(v.as_integer()); });
  }
  void read_double(const std::string& key, double& dst) {
    read(key, dst, [](const toml::Value& v) { return v.as_double(); });
  }
  void read_bool(const std::string& key, bool& dst) {
    read(key, dst, [](const toml::Value& v) { return v.as_boolean(); });
  }
  void read_string(const std::string& key, std::string& dst) {
    read(key, dst, [](const toml::Value& v) { return v.as_string(); });
  }
  void read_int_list(const std::string& key, std::vector<int>& dst) {
    read(key, dst, [](const toml::Value& v) {
      std::vector<int> out;
      for (auto i : v.as_integer_array()) {
        out.push_back(static_cast<int>(i));
      }
      return out;
    });
  }
  void read_double_list(const std::string& key, std::vector<double>& dst) {
    read(key, dst, [](const toml::Value& v) { return v.as_double_array(); });
  }
  void read_string_list(const std::string& key, std::vector<std::string>& dst) {
    read(key, dst, [](const toml::Value& v) { return v.as_string_array(); });
  }

  void reject_unknown() const {
    for (const auto& [key, value] : table_) {
      if (consumed_.count(key) == 0) {
        throw std::runtime_error("config: unknown key '" + key + "' (line " +
                                 std::to_string(value.line) + ")");
      }
    }
  }

 private:
  toml::Table table_;
  std::set<std::string> consumed_;
};

ExperimentMode parse_mode(const std::string& text) {
  if (text == "offline") return ExperimentMode::Offline;
  if (text == "online") return ExperimentMode::Online;
  if (text == "genie-check") return ExperimentMode::GenieCheck;
  throw std::runtime_error("config: mode must be offline, online or genie-check, got '" +
                           text + "'");
}

OnlineMode parse_online_mode(const std::string& text) {
  if (text == "ep") return OnlineMode::Ep;
  if (text == "implicit") return OnlineMode::Implicit;
  if (text == "closed-form") return OnlineMode::ClosedForm;
  if (text == "recursive-ridge") return OnlineMode::RecursiveRidge;
  throw std::runtime_error(
      "config: online.mode must be ep, implicit, closed-form or recursive-ridge");
}

Eigen::Vector2cd parse_field_vector(ConfigReader& reader, const std::string& stem,
                                    Eigen::Vector2cd fallback) {
  std::vector<double> re{fallback(0).real(), fallback(1).real()};
  std::vector<double> im{fallback(0).imag(), fallback(1).imag()};
  reader.read_double_list(stem + "_re", re);
  reader.read_double_list(stem + "_im", im);
  if (re.size() != 2 || im.size() != 2) {
    throw std::runtime_error("config: " + stem + "_re/_im need exactly 2 entries");
  }
  return {Complex(re[0], im[0]), Complex(re[1], im[1])};
}

}  // namespace

void ExperimentConfig::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) {
      throw std::runtime_error("config: " + what);
    }
  };
  require(window >= 1, "prediction.window must be >= 1");
  require(lag >= 1, "prediction.lag must be >= 1");
  require(replicates >= 1, "data.replicates must be >= 1");
  require(jobs >= 1, "jobs must be >= 1");

  if (mode == ExperimentMode::Offline) {
    require(meta_frames >= 1, "data.frames must be >= 1");
    require(!l_new_sweep.empty(), "data.l_new must be nonempty");
    for (int l : l_new_sweep) {
      require(l >= 0, "data.l_new entries must be >= 0");
    }
    require(l_te >= 1, "data.l_te must be >= 1");
    require(eval_samples >= 1, "data.eval_samples must be >= 1");
    require(!schemes.empty(), "schemes.enabled must be nonempty");
  }
  if (mode == ExperimentMode::Online) {
    require(!online_memory.empty(), "online.memory must be nonempty");
    for (int m : online_memory) {
      require(m >= 1, "online.memory entries must be >= 1");
    }
    require(online_frames >= 1, "online.frames must be >= 1");
    require(online_l_tr >= 0, "online.l_tr must be >= 0");
    require(l_te >= 1, "data.l_te must be >= 1");
    require(smoothing_window >= 1, "online.smoothing must be >= 1");
    OnlineConfig probe = online;
    probe.memory = online_memory.front();
    probe.validate();
  }
  if (mode == ExperimentMode::GenieCheck) {
    require(!genie_check.windows.empty(), "genie_check.windows must be nonempty");
    for (int w : genie_check.windows) {
      require(w >= 1, "genie_check.windows entries must be >= 1");
    }
    require(genie_check.lag >= 1, "genie_check.lag must be >= 1");
    require(genie_check.eval_samples >= 1, "genie_check.eval_samples must be >= 1");
    require(genie_check.spectrum == "jakes" || genie_check.spectrum == "rounded" ||
                genie_check.spectrum == "flat",
            "genie_check.spectrum must be jakes, rounded or flat");
    if (genie_check.spectrum != "flat") {
      require(genie_check.doppler > 0.0, "genie_check.doppler must be positive");
    }
  }

  const std::set<std::string> known = {"meta", "conventional", "joint", "genie"};
  for (const auto& s : schemes) {
    if (known.count(s) == 0) {
      throw std::runtime_error("config: unknown scheme '" + s + "'");
    }
  }
  if (channel == ChannelModelKind::MixedDoppler) {
    require(mixed.jakes || mixed.rounded, "channel.families must enable a family");
    require(mixed.doppler_lo > 0.0 && mixed.doppler_hi >= mixed.doppler_lo,
            "channel.doppler_lo/doppler_hi must satisfy 0 < lo <= hi");
  } else {
    scm.validate();
  }
  noise.validate();
  for (double l : effective_lambda_grid()) {
    require(l > 0.0, "meta.lambda_grid entries must be positive");
  }
}

std::vector<double> ExperimentConfig::effective_lambda_grid() const {
  return lambda_grid.empty() ? default_lambda_grid() : lambda_grid;
}

std::uint64_t ExperimentConfig::effective_resplit_seed() const {
  return resplit_seed ? *resplit_seed
                      : derive_seed(base_seed, seed_stream::kResplit);
}

ExperimentConfig default_config(ExperimentMode mode) {
  ExperimentConfig cfg;
  cfg.mode = mode;
  if (mode == ExperimentMode::Online) {
    cfg.replicates = 10;
    cfg.channel = ChannelModelKind::Scm;
  }
  if (mode == ExperimentMode::GenieCheck) {
    cfg.replicates = 1;
  }
  return cfg;
}

ExperimentConfig config_from_toml(const std::string& text,
                                  const ConfigOverrides& overrides) {
  ConfigReader reader{toml::parse_string(text)};

  ExperimentMode mode = ExperimentMode::Offline;
  if (const toml::Value* v = reader.find("mode")) {
    mode = parse_mode(v->as_string());
  }
  if (overrides.mode) {
    mode = *overrides.mode;  // the subcommand wins over the config file
  }

  ExperimentConfig cfg = default_config(mode);
  bool replicates_given = reader.find("data.replicates") != nullptr;

  reader.read_u64("seed", cfg.base_seed);
  reader.read_int("jobs", cfg.jobs);
  reader.read_bool("timing", cfg.timing);

  reader.read_int("prediction.window", cfg.window);
  reader.read_int("prediction.lag", cfg.lag);

  reader.read_int("data.frames", cfg.meta_frames);
  reader.read_int_list("data.l_new", cfg.l_new_sweep);
  reader.read_int("data.l_te", cfg.l_te);
  reader.read_int("data.eval_samples", cfg.eval_samples);
  if (replicates_given) {
    reader.read_int("data.replicates", cfg.replicates);
  }

  std::string model = cfg.channel == ChannelModelKind::Scm ? "scm" : "mixed-doppler";
  reader.read_string("channel.model", model);
  if (model == "scm") {
    cfg.channel = ChannelModelKind::Scm;
  } else if (model == "mixed-doppler") {
    cfg.channel = ChannelModelKind::MixedDoppler;
  } else {
    throw std::runtime_error("config: channel.model must be mixed-doppler or scm");
  }

  std::vector<std::string> families = {"jakes", "rounded"};
  reader.read_string_list("channel.families", families);
  cfg.mixed.jakes = std::count(families.begin(), families.end(), "jakes") > 0;
  cfg.mixed.rounded = std::count(families.begin(), families.end(), "rounded") > 0;
  for (const auto& f : families) {
    if (f != "jakes" && f != "rounded") {
      throw std::runtime_error("config: channel.families entries must be jakes or rounded");
    }
  }
  reader.read_double("channel.doppler_lo", cfg.mixed.doppler_lo);
  reader.read_double("channel.doppler_hi", cfg.mixed.doppler_hi);

  reader.read_int("channel.scm.paths", cfg.scm.path_count);
  reader.read_double_list("channel.scm.powers", cfg.scm.path_powers);
  {
    std::vector<double> range{cfg.scm.doppler_hz_lo, cfg.scm.doppler_hz_hi};
    reader.read_double_list("channel.scm.doppler_hz", range);
    if (range.size() != 2) {
      throw std::runtime_error("config: channel.scm.doppler_hz needs [lo, hi]");
    }
    cfg.scm.doppler_hz_lo = range[0];
    cfg.scm.doppler_hz_hi = range[1];
  }
  reader.read_double("channel.scm.slot_duration", cfg.scm.slot_duration_s);
  reader.read_bool("channel.scm.polarization", cfg.scm.polarization);
  reader.read_double("channel.scm.xpr_mu_db", cfg.scm.xpr_mu_db);
  reader.read_double("channel.scm.xpr_sigma_db", cfg.scm.xpr_sigma_db);
  cfg.scm.field_tx = parse_field_vector(reader, "channel.scm.field_tx", cfg.scm.field_tx);
  cfg.scm.field_rx = parse_field_vector(reader, "channel.scm.field_rx", cfg.scm.field_rx);

  if (reader.find("noise.snr_db") != nullptr) {
    reader.read_double("noise.snr_db", cfg.noise.snr_db);
  }
  reader.read_int("noise.pilots", cfg.noise.pilots);

  reader.read_string_list("schemes.enabled", cfg.schemes);

  reader.read_double_list("meta.lambda_grid", cfg.lambda_grid);
  {
    std::uint64_t rs = 0;
    if (reader.find("meta.resplit_seed") != nullptr) {
      reader.read_u64("meta.resplit_seed", rs);
      cfg.resplit_seed = rs;
    }
  }

  reader.read_int_list("online.memory", cfg.online_memory);
  reader.read_double("online.lambda", cfg.online.lambda);
  reader.read_double("online.alpha", cfg.online.alpha);
  reader.read_double("online.step", cfg.online.step);
  reader.read_int("online.iterations", cfg.online.iterations);
  {
    std::string online_mode;
    reader.read_string("online.mode", online_mode);
    if (!online_mode.empty()) {
      cfg.online.mode = parse_online_mode(online_mode);
    }
  }
  reader.read_double("online.prev_weight", cfg.online.prev_weight);
  reader.read_bool("online.two_sided", cfg.online.two_sided);
  reader.read_int("online.frames", cfg.online_frames);
  reader.read_int("online.l_tr", cfg.online_l_tr);
  reader.read_int("online.smoothing", cfg.smoothing_window);

  reader.read_string("genie_check.spectrum", cfg.genie_check.spectrum);
  reader.read_double("genie_check.doppler", cfg.genie_check.doppler);
  reader.read_int_list("genie_check.windows", cfg.genie_check.windows);
  reader.read_int("genie_check.lag", cfg.genie_check.lag);
  reader.read_long("genie_check.eval_samples", cfg.genie_check.eval_samples);

  reader.reject_unknown();

  if (overrides.seed) {
    cfg.base_seed = *overrides.seed;
  }
  if (overrides.jobs) {
    cfg.jobs = *overrides.jobs;
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path,
                             const ConfigOverrides& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("config: cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_toml(buf.str(), overrides);
}

}  // namespace chanpred
