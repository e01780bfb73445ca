/* Compiled as plain C to keep the public header C-clean. */
#include "comdf/comdf.h"

const char* comdf_header_smoke(void) {
    comdf_status status = COMDF_OK;
    return comdf_status_name(status);
}
