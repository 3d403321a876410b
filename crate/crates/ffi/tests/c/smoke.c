#include <math.h>
#include <stdio.h>
#include <string.h>

#include "fibertrap.h"

#define CHECK(cond)                                              \
    do {                                                         \
        if (!(cond)) {                                           \
            fprintf(stderr, "line %d: %s\n", __LINE__, #cond);   \
            return 1;                                            \
        }                                                        \
    } while (0)

int main(void) {
    FtFiber *fiber = NULL;
    CHECK(ft_fiber_new(250e-9, 0.0, 1.0, &fiber) == FT_STATUS_OK);

    FtMode *mode = NULL;
    CHECK(ft_mode_solve(fiber, 980e-9, &mode) == FT_STATUS_OK);
    CHECK(ft_mode_normalize(mode, 30e-3) == FT_STATUS_OK);
    FtModeInfo info;
    CHECK(ft_mode_info(mode, &info) == FT_STATUS_OK);
    CHECK(info.n2 < info.n_eff && info.n_eff < info.n1);
    CHECK(info.power == 30e-3);

    FtTrapParams params = {
        .red_wavelength = 980e-9,
        .red_power = 30e-3,
        .blue_wavelength = 730e-9,
        .blue_power = 13e-3,
        .surface = FT_SURFACE_VAN_DER_WAALS,
    };
    FtTrapResult trap;
    CHECK(ft_trap_characterize(fiber, &params, &trap) == FT_STATUS_OK);
    CHECK(trap.has_trap == 1 && trap.d_min > 0.0 && trap.depth_mk > 0.0);

    double g = 0.0;
    CHECK(ft_coupling_rate(2.47e-9, 1.4e10, 1, &g, NULL) == FT_STATUS_OK);
    CHECK(fabs(g - 34.58) < 1e-9);

    FtFiber *bad = NULL;
    CHECK(ft_fiber_new(-1.0, 0.0, 1.0, &bad) == FT_STATUS_INPUT);
    char message[128];
    CHECK(ft_last_error_message(message, sizeof message) > 0 && strlen(message) > 0);

    printf("%s %.17g %.17g %.17g\n", ft_version(), info.beta, trap.d_min, trap.depth_mk);
    ft_mode_free(mode);
    ft_fiber_free(fiber);
    return 0;
}
