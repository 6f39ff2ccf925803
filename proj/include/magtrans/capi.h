#ifndef MAGTRANS_CAPI_H
#define MAGTRANS_CAPI_H

/* C interface to the verification library. All objects are opaque handles;
 * every entry point reports through status codes and mt_last_error(). */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct mt_config mt_config;
typedef struct mt_report mt_report;

typedef enum {
  MT_OK = 0,
  MT_CHECK_FAILED = 1,
  MT_CONFIG_ERROR = 2,
  MT_RUNTIME_ERROR = 3
} mt_status;

/* Parse and validate a JSON config file. On success *out owns the handle. */
mt_status mt_config_load(const char* path, mt_config** out);
mt_status mt_config_set_seed(mt_config* cfg, unsigned long long seed);
mt_status mt_config_set_out_dir(mt_config* cfg, const char* dir);
void mt_config_free(mt_config* cfg);

/* Run a named suite ("all" runs everything). Returns MT_OK when every check
 * passes, MT_CHECK_FAILED when the suite ran but a check failed; *out is set
 * in both cases. */
mt_status mt_run_suite(const mt_config* cfg, const char* suite, mt_report** out);

int mt_report_passed(const mt_report* rep);
/* JSON text owned by the report handle; valid until mt_report_free. */
const char* mt_report_json(const mt_report* rep);
void mt_report_free(mt_report* rep);

mt_status mt_emit_decay_table(const mt_config* cfg, const char* csv_path);

/* Message for the most recent failing call on this thread. */
const char* mt_last_error(void);

#ifdef __cplusplus
}
#endif

#endif /* MAGTRANS_CAPI_H */
