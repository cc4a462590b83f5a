/* tailor.h -- target dependent definitions */

#ifndef O_BINARY
# define O_BINARY 0
#endif

#ifndef PATH_SEP
# define PATH_SEP '/'
#endif
