/* system-dependent definitions for coreutils */

#include <errno.h>
#include <stdbool.h>
#include <stdlib.h>
#include <string.h>
#include <limits.h>

#ifndef PATH_MAX
# define PATH_MAX 4096
#endif

void error (int status, int errnum, char const *format, ...);
char const *quote (char const *arg);
bool copy_file (char const *from, char const *to);
bool change_attributes (char const *name, mode_t mode);
