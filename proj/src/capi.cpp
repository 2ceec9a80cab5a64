#include "qcayley/qcayley.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "qcayley/cayley.hpp"
#include "qcayley/commands.hpp"
#include "qcayley/config.hpp"
#include "qcayley/error.hpp"
#include "qcayley/kinf.hpp"

struct qcg_config {
  qcayley::Config cfg;
};

struct qcg_tree {
  qcayley::CayleyTree tree;
};

namespace {

thread_local std::string g_last_error;

qcg_status to_status(qcayley::ErrorCode code) { return static_cast<qcg_status>(static_cast<int>(code)); }

template <class F>
qcg_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return QCG_OK;
  } catch (const qcayley::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return QCG_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QCG_ERR_INTERNAL;
  }
}

void check_ptr(const void* p, const char* what) {
  if (!p) qcayley::fail(qcayley::ErrorCode::InvalidArgument, std::string(what) + " is null");
}

char* copy_out(const std::string& s, size_t* len) {
  char* buf = static_cast<char*>(std::malloc(s.size() + 1));
  if (!buf) throw std::bad_alloc();
  std::memcpy(buf, s.data(), s.size());
  buf[s.size()] = '\0';
  if (len) *len = s.size();
  return buf;
}

}  // namespace

extern "C" {

const char* qcg_version(void) { return "0.1.0"; }

const char* qcg_status_name(qcg_status status) {
  return qcayley::error_name(static_cast<qcayley::ErrorCode>(static_cast<int>(status)));
}

int qcg_status_exit_class(qcg_status status) {
  return qcayley::exit_class(static_cast<qcayley::ErrorCode>(static_cast<int>(status)));
}

const char* qcg_last_error(void) { return g_last_error.c_str(); }

qcg_status qcg_config_parse(const char* json, qcg_config** out) {
  return guarded([&] {
    check_ptr(json, "json");
    check_ptr(out, "out");
    *out = new qcg_config{qcayley::parse_config(json)};
  });
}

qcg_status qcg_config_load(const char* path, qcg_config** out) {
  return guarded([&] {
    check_ptr(path, "path");
    check_ptr(out, "out");
    *out = new qcg_config{qcayley::load_config(path)};
  });
}

qcg_status qcg_config_set(qcg_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    check_ptr(cfg, "cfg");
    check_ptr(key, "key");
    check_ptr(value, "value");
    qcayley::Config copy = cfg->cfg;
    qcayley::apply_override(copy, key, value);
    cfg->cfg = std::move(copy);
  });
}

void qcg_config_free(qcg_config* cfg) { delete cfg; }

qcg_status qcg_run(const qcg_config* cfg, const char* command, char** out, size_t* len, int* exit_code) {
  return guarded([&] {
    check_ptr(cfg, "cfg");
    check_ptr(command, "command");
    check_ptr(out, "out");
    qcayley::CommandResult r = qcayley::run_command(cfg->cfg, command);
    *out = copy_out(r.output, len);
    if (exit_code) *exit_code = r.exit_code;
  });
}

void qcg_free_string(char* s) { std::free(s); }

qcg_status qcg_tree_build(const qcg_config* cfg, qcg_tree** out) {
  return guarded([&] {
    check_ptr(cfg, "cfg");
    check_ptr(out, "out");
    if (cfg->cfg.factors.empty()) qcayley::fail(qcayley::ErrorCode::ConfigError, "factor list is empty");
    qcayley::FreeProduct group(cfg->cfg.factors);
    *out = new qcg_tree{qcayley::CayleyTree::build(group, cfg->cfg.radius, cfg->cfg.vertex_cap)};
  });
}

size_t qcg_tree_vertex_count(const qcg_tree* tree) { return tree ? tree->tree.vertices().size() : 0; }

size_t qcg_tree_edge_count(const qcg_tree* tree) { return tree ? tree->tree.ascending_edges().size() : 0; }

qcg_status qcg_tree_export(const qcg_tree* tree, const char* format, char** out, size_t* len) {
  return guarded([&] {
    check_ptr(tree, "tree");
    check_ptr(format, "format");
    check_ptr(out, "out");
    *out = copy_out(qcayley::export_graph(tree->tree, qcayley::parse_graph_format(format)), len);
  });
}

void qcg_tree_free(qcg_tree* tree) { delete tree; }

qcg_status qcg_dim_sequence(double m1, int kmax, double* out) {
  return guarded([&] {
    check_ptr(out, "out");
    qcayley::DimSequence ds = qcayley::dim_sequence_from_m1(m1, kmax);
    for (int k = 0; k <= kmax; ++k) out[k] = ds.m[static_cast<size_t>(k)];
  });
}

qcg_status qcg_rk_norm(double m1, int k, int l, double tol, double* value, double* tail_bound) {
  return guarded([&] {
    check_ptr(value, "value");
    qcayley::DimSequence ds = qcayley::dim_sequence_from_m1(m1, 1);
    qcayley::RkNorm r = qcayley::rk_norm(k, l, ds, tol);
    *value = r.value;
    if (tail_bound) *tail_bound = r.tail_bound;
  });
}

qcg_status qcg_hilbert_norm(int n, double tol, double* out) {
  return guarded([&] {
    check_ptr(out, "out");
    *out = qcayley::hilbert_norm(n, tol);
  });
}

}  // extern "C"

static_assert(static_cast<int>(qcayley::ErrorCode::SignMismatch) == QCG_ERR_SIGN_MISMATCH);
static_assert(static_cast<int>(qcayley::ErrorCode::Internal) == QCG_ERR_INTERNAL);
static_assert(static_cast<int>(qcayley::ErrorCode::ConfigError) == QCG_ERR_CONFIG);
