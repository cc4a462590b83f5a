/* system-dependent definitions shared by the file utilities */

#include <errno.h>
#include <stdlib.h>
#include <string.h>

#ifndef S_IRWXU
# define S_IRWXU 0700
#endif

#define STREQ(a, b) (strcmp ((a), (b)) == 0)
#define _(msgid) gettext (msgid)

char *quote (char const *name);
char *quote_n (int n, char const *name);
void error (int status, int errnum, char const *format, ...);
char *path_concat (char const *dir, char const *base, char **base_in_result);
char *savedir (char const *dir);
size_t full_write (int fd, const void *buf, size_t count);
