#ifndef QCAYLEY_QCAYLEY_H
#define QCAYLEY_QCAYLEY_H

#include <stddef.h>

#if defined(QCG_BUILDING_LIBRARY)
#define QCG_API __attribute__((visibility("default")))
#else
#define QCG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qcg_status {
  QCG_OK = 0,
  QCG_ERR_INVALID_ARGUMENT,
  QCG_ERR_UNKNOWN_DIRECTION,
  QCG_ERR_INVALID_FACTOR,
  QCG_ERR_SINGULAR_Q,
  QCG_ERR_INDEX_OUT_OF_RANGE,
  QCG_ERR_NO_LENGTH_ADDITIVE_SUBOBJECT,
  QCG_ERR_EXCEPTIONAL_CASE,
  QCG_ERR_SUPPORT_EXCEEDS_KMAX,
  QCG_ERR_UNSUPPORTED_FORMAT,
  QCG_ERR_CONFIG,
  QCG_ERR_PARSE,
  QCG_ERR_IO,
  QCG_ERR_OVERFLOW,
  QCG_ERR_RADIUS_TOO_LARGE,
  QCG_ERR_AMBIENT_TOO_LARGE,
  QCG_ERR_TOL_TOO_SMALL,
  QCG_ERR_NO_CONVERGENCE,
  QCG_ERR_AMBIENT_MISMATCH,
  QCG_ERR_DEGENERATE_G,
  QCG_ERR_SIGN_MISMATCH,
  QCG_ERR_INTERNAL
} qcg_status;

typedef struct qcg_config qcg_config;
typedef struct qcg_tree qcg_tree;

QCG_API const char* qcg_version(void);
QCG_API const char* qcg_status_name(qcg_status status);
/* 0 ok, 1 verification failure, 2 config error, 3 resource cap */
QCG_API int qcg_status_exit_class(qcg_status status);
/* Message of the last failed call on this thread, "" if none. */
QCG_API const char* qcg_last_error(void);

QCG_API qcg_status qcg_config_parse(const char* json, qcg_config** out);
QCG_API qcg_status qcg_config_load(const char* path, qcg_config** out);
QCG_API qcg_status qcg_config_set(qcg_config* cfg, const char* key, const char* value);
QCG_API void qcg_config_free(qcg_config* cfg);

/* command: tree | dims | norms | kinf | verify | ao.
 * On QCG_OK *out holds a NUL-terminated buffer to release with qcg_free_string;
 * *exit_code is 1 when a verification case failed. */
QCG_API qcg_status qcg_run(const qcg_config* cfg, const char* command, char** out, size_t* len, int* exit_code);
QCG_API void qcg_free_string(char* s);

QCG_API qcg_status qcg_tree_build(const qcg_config* cfg, qcg_tree** out);
QCG_API size_t qcg_tree_vertex_count(const qcg_tree* tree);
QCG_API size_t qcg_tree_edge_count(const qcg_tree* tree);
/* format: "dot" or "json" */
QCG_API qcg_status qcg_tree_export(const qcg_tree* tree, const char* format, char** out, size_t* len);
QCG_API void qcg_tree_free(qcg_tree* tree);

/* out must hold kmax + 1 values. */
QCG_API qcg_status qcg_dim_sequence(double m1, int kmax, double* out);
QCG_API qcg_status qcg_rk_norm(double m1, int k, int l, double tol, double* value, double* tail_bound);
QCG_API qcg_status qcg_hilbert_norm(int n, double tol, double* out);

#ifdef __cplusplus
}
#endif

#endif
