// hiprove: run, flatten, pack and export proof scripts; check hiproof JSON.
//
// Exit status: 0 success, 2 incomplete proof (run), 1 any error. Errors
// are printed on stderr as one line: ERROR <category>: <detail> at <pos>.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hiprove/hiprove.hpp"

namespace {

using namespace hiprove;

// Error raised by the front end itself; `where` overrides the position.
class CliError : public Error {
 public:
  CliError(std::string category, const std::string& detail, std::string where = {})
      : Error(std::move(category), detail), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

struct Source {
  std::string path;
  std::string text;
};

Source read_source(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError("io", "cannot read file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return {path, ss.str()};
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw CliError("io", "cannot write " + out_path);
  out << text;
}

enum class Format { Flat, Packaged };

Format detect_format(const std::string& path, const std::string& forced) {
  if (forced == "flat") return Format::Flat;
  if (forced == "packaged") return Format::Packaged;
  if (!forced.empty()) throw CliError("usage", "unknown format '" + forced + "'");
  auto ends_with = [&](const char* ext) {
    const std::string e(ext);
    return path.size() >= e.size() && path.compare(path.size() - e.size(), e.size(), e) == 0;
  };
  if (ends_with(".fl")) return Format::Flat;
  if (ends_with(".pk")) return Format::Packaged;
  throw CliError("usage", "cannot tell the script format; use --format flat|packaged");
}

std::size_t resolve_tau(const std::optional<std::size_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("HIPROVE_TAU"); env && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || v == 0) throw CliError("usage", std::string("bad HIPROVE_TAU value '") + env + "'");
    return static_cast<std::size_t>(v);
  }
  return kDefaultTau;
}

// Runs a script without requiring it to finish.
Session execute(const Source& src, Format fmt) {
  if (fmt == Format::Flat) return run_flat(parse_flat(src.text));
  const PackagedScript p = parse_packaged(src.text);
  Session s;
  s.set_goal(p.goal);
  s.apply(interpret(p.tactic, default_registry()));
  return s;
}

Session execute_complete(const Source& src, Format fmt) {
  Session s = execute(src, fmt);
  if (!s.finished())
    throw IncompleteProof(std::to_string(s.pending().size()) + " goal(s) left: " +
                              describe_pending(s.pending()),
                          s.pending().size());
  return s;
}

struct Options {
  std::string input;
  std::string output;
  std::string format;
  std::string mode = "tactic";
  std::string name;
  std::optional<std::size_t> tau;
};

int cmd_run(const Options& o) {
  const Source src = read_source(o.input);
  Session s = execute(src, detect_format(o.input, o.format));
  if (s.finished()) {
    std::cout << print_thm(s.theorem()) << "\n";
    return 0;
  }
  std::cout << s.print_state();
  return 2;
}

int cmd_flatten(const Options& o) {
  const Source src = read_source(o.input);
  const PackagedScript p = parse_packaged(src.text);
  write_output(o.output, print_flat(flatten(p)));
  return 0;
}

int cmd_pack(const Options& o) {
  const Source src = read_source(o.input);
  const FlatScript f = parse_flat(src.text);
  std::optional<std::string> name;
  if (!o.name.empty()) name = o.name;
  write_output(o.output, print_packaged(pack(f, name)));
  return 0;
}

int cmd_export(const Options& o) {
  const std::size_t tau = resolve_tau(o.tau);
  const Source src = read_source(o.input);
  const Format fmt = detect_format(o.input, o.format);
  Hiproof h = Hiproof::atomic(IdentityLabel{}, "", 1);
  if (o.mode == "tactic") {
    h = gtree_to_hiproof(execute(src, fmt).tree());
  } else if (o.mode == "kernel") {
    h = hiproof_of(execute_complete(src, fmt).theorem());
  } else {
    throw CliError("usage", "unknown mode '" + o.mode + "'");
  }
  write_output(o.output, to_json_text(truncate(h, tau)));
  return 0;
}

int cmd_check(const Options& o) {
  const Source src = read_source(o.input);
  const Hiproof h = from_json_unchecked(parse_json_text(src.text));
  const WellFormedReport rep = well_formed(h);
  if (!rep) throw CliError("malformed", rep.violation, o.input + ":" + json_pointer(h, rep.path));
  std::cout << "well-formed: IN=" << h.in_count() << " OUT=" << h.out_count()
            << " SS=" << h.shallow_size() << " boxes=" << count_boxes(h) << "\n";
  return 0;
}

std::string position(const Error& e, const Source* src, const std::string& path) {
  if (const auto* c = dynamic_cast<const CliError*>(&e); c && !c->where().empty()) return c->where();
  if (const auto* s = dynamic_cast<const SyntaxError*>(&e); s && src) {
    const auto [line, col] = line_column(src->text, s->offset());
    return path + ":" + std::to_string(line) + ":" + std::to_string(col);
  }
  if (const auto* s = dynamic_cast<const ScriptError*>(&e); s && s->line())
    return path + ":" + std::to_string(*s->line());
  if (const auto* j = dynamic_cast<const JsonError*>(&e)) return path + ":" + j->where();
  return path;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Record, refactor and export hierarchical proofs"};
  app.require_subcommand(1);
  Options o;

  auto* run = app.add_subcommand("run", "Execute a script and print the theorem or the open goals");
  run->add_option("file", o.input, "Script (.fl or .pk)")->required();
  run->add_option("--format", o.format, "flat or packaged (default: from extension)");

  auto* flat = app.add_subcommand("flatten", "Turn a packaged script into a flat one");
  flat->add_option("file", o.input, "Packaged script")->required();
  flat->add_option("-o,--output", o.output, "Output file (default: stdout)");

  auto* pk = app.add_subcommand("pack", "Turn a flat script into a packaged one");
  pk->add_option("file", o.input, "Flat script")->required();
  pk->add_option("-o,--output", o.output, "Output file (default: stdout)");
  pk->add_option("--name", o.name, "Binding name for the packaged proof");

  auto* ex = app.add_subcommand("export", "Execute a script and write its hiproof as JSON");
  ex->add_option("file", o.input, "Script (.fl or .pk)")->required();
  ex->add_option("--format", o.format, "flat or packaged (default: from extension)");
  ex->add_option("--tau", o.tau, "Truncation threshold (default: HIPROVE_TAU or 1000)")
      ->check(CLI::PositiveNumber);
  ex->add_option("--mode", o.mode, "tactic or kernel")->check(CLI::IsMember({"tactic", "kernel"}));
  ex->add_option("-o,--output", o.output, "Output file (default: stdout)");

  auto* ck = app.add_subcommand("check", "Check a hiproof JSON document for well-formedness");
  ck->add_option("file", o.input, "JSON document")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "ERROR usage: " << e.what() << " at command line\n";
    return 1;
  }

  std::optional<Source> src;
  try {
    if (*run) return cmd_run(o);
    if (*flat) return cmd_flatten(o);
    if (*pk) return cmd_pack(o);
    if (*ex) return cmd_export(o);
    if (*ck) return cmd_check(o);
  } catch (const Error& e) {
    // Syntax positions need the text again.
    std::ifstream in(o.input, std::ios::binary);
    if (in) {
      std::ostringstream ss;
      ss << in.rdbuf();
      src = Source{o.input, ss.str()};
    }
    std::string detail = e.what();
    for (char& c : detail)
      if (c == '\n') c = ' ';
    const std::string pos = position(e, src ? &*src : nullptr, o.input);
    std::cerr << "ERROR " << e.category() << ": " << detail << " at " << pos << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "ERROR internal: " << e.what() << " at " << o.input << "\n";
    return 1;
  }
  return 1;
}
