/* C interface to the asianjump pricing library.
 *
 * All functions return aj_status; AJ_OK means the out-parameters were written.
 * On failure a thread-local message is available via aj_last_error(). Output
 * pointers may be NULL when the caller does not need that value (the primary
 * output of each call is required).
 */
#ifndef ASIANJUMP_H
#define ASIANJUMP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum aj_status {
    AJ_OK = 0,
    AJ_EINVAL = 1,       /* malformed argument (bad pointer, bad config value) */
    AJ_EDOMAIN = 2,      /* argument outside a function's mathematical domain */
    AJ_EREGIME = 3,      /* moneyness regime mismatch (e.g. otm op at/in the money) */
    AJ_EASSUMPTION = 4,  /* model violates a validity assumption */
    AJ_ENOSOLUTION = 5,  /* no solution in range (e.g. implied vol) */
    AJ_ENOCONV = 6,      /* iteration/quadrature failed to converge */
    AJ_EUNSUPPORTED = 7, /* operation not available for this model kind */
    AJ_EIO = 8,          /* file or JSON error */
    AJ_EINTERNAL = 9     /* unexpected failure */
} aj_status;

typedef enum aj_style { AJ_FIXED = 0, AJ_FLOATING = 1 } aj_style;
typedef enum aj_putcall { AJ_CALL = 0, AJ_PUT = 1 } aj_putcall;

typedef struct aj_model aj_model; /* opaque */

const char* aj_version(void);
/* Message for the most recent failure on this thread ("" if none). */
const char* aj_last_error(void);

/* ---- model lifecycle ------------------------------------------------- */

aj_status aj_model_load(const char* path, aj_model** out);
aj_status aj_model_from_json(const char* json_text, aj_model** out);
aj_status aj_model_save(const aj_model* model, const char* path);
void aj_model_free(aj_model* model);

/* Basic market fields plus the diffusion level at the spot. */
aj_status aj_model_info(const aj_model* model, double* out_s0, double* out_r, double* out_q,
                        double* out_sigma_at_spot);

/* Writes the assumption report as JSON into buffer (NUL-terminated when it
 * fits). *out_needed receives the full size including the terminator; a
 * too-small buffer is not an error. out_usable: 1 unless a hard check failed. */
aj_status aj_check_assumptions(const aj_model* model, char* buffer, size_t buffer_len,
                               size_t* out_needed, int* out_usable);

/* ---- short-maturity coefficients -------------------------------------- */

/* How a coefficient was computed. */
typedef enum aj_method {
    AJ_METHOD_CLOSED_FORM = 0,
    AJ_METHOD_QUADRATURE = 1,
    AJ_METHOD_LIMIT = 2
} aj_method;

/* Out-of-the-money leading coefficient (price ~ value * T). Fixed style takes
 * the cash strike, floating style the strike fraction. The regime is strict
 * unless allow_boundary != 0, which admits the at-the-money boundary and
 * returns that side's one-sided limit. force_quadrature != 0 routes through
 * the Levy-density double integral even where a closed form exists.
 * out_degenerate: 1 when the coefficient is structurally zero (jump measure
 * cannot reach the money). */
aj_status aj_otm_coeff(const aj_model* model, aj_style style, aj_putcall putcall, double strike,
                       int force_quadrature, int allow_boundary, double* out_value,
                       int* out_method, int* out_degenerate);

/* At-the-money coefficient (price ~ value * sqrt(T)); degenerate=1 when the
 * diffusion vanishes at the spot. Identical for calls/puts and both styles. */
aj_status aj_atm_coeff(const aj_model* model, double* out_value, int* out_degenerate);

/* European counterpart of aj_otm_coeff (fixed strikes only, strict regime). */
aj_status aj_european_otm_coeff(const aj_model* model, aj_putcall putcall, double strike,
                                int force_quadrature, double* out_value);

/* ---- analytic approximation ------------------------------------------ */

/* Which side of the approximation produced the price. */
typedef enum aj_side_used {
    AJ_SIDE_CALL_DIRECT = 0,
    AJ_SIDE_PUT_DIRECT = 1,
    AJ_SIDE_VIA_PARITY = 2
} aj_side_used;

/* Short-maturity price approximation for fixed strikes: diffusive Black part
 * plus jump coefficient * maturity, out-of-the-money side priced directly and
 * the other side through put-call parity. */
aj_status aj_approx_price(const aj_model* model, aj_putcall putcall, double strike,
                          double maturity, double* out_total, double* out_diffusive,
                          double* out_jump_term, double* out_sigma_ln, int* out_side_used);

/* Implied log-normal vol of the average matching the given price. */
aj_status aj_implied_vol(const aj_model* model, aj_putcall putcall, double strike,
                         double maturity, double price, double* out_vol);

/* ---- Monte Carlo ------------------------------------------------------ */

typedef struct aj_mc_config {
    long n_paths;   /* <=0: default 100000 */
    int n_steps;    /* <=0: default 100 */
    uint64_t seed;
    long batch_size; /* <=0: default 4096 */
    int antithetic;
} aj_mc_config;

aj_status aj_mc_price(const aj_model* model, aj_style style, aj_putcall putcall, double strike,
                      double maturity, const aj_mc_config* cfg, double* out_price,
                      double* out_std_error);

/* Maturity sweep of (1/T)-scaled MC prices next to the same-scaled
 * leading-order prediction. Arrays must hold n_maturities entries. */
aj_status aj_convergence(const aj_model* model, aj_style style, aj_putcall putcall, double strike,
                         const double* maturities, size_t n_maturities, const aj_mc_config* cfg,
                         double* out_scaled_price, double* out_scaled_std_err,
                         double* out_asym_scaled);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ASIANJUMP_H */
