/* touch -- change modification and access times of files */

#include <config.h>
#include <stdio.h>
#include <fcntl.h>
#include <sys/stat.h>

#include "system.h"

static int no_create;

/* Update the timestamps of FILE, creating it unless told not to. */
static int
touch (char const *file)
{
  int fd = -1;

  if (!no_create)
    {
      fd = open (file, O_WRONLY | O_CREAT | O_NONBLOCK, 0666);
      if (fd < 0 && errno != EISDIR)
        {
          error (0, errno, _("cannot touch %s"), quote (file));
          return 1;
        }
    }

  if (utimensat (AT_FDCWD, file, NULL, 0) != 0)
    {
      error (0, errno, _("setting times of %s"), quote (file));
      return 1;
    }
  if (fd >= 0 && close (fd) != 0)
    {
      error (0, errno, _("closing %s"), quote (file));
      return 1;
    }
  return 0;
}

int
main (int argc, char **argv)
{
  int c;
  int err = 0;

  while ((c = getopt (argc, argv, "c")) != -1)
    if (c == 'c')
      no_create = 1;
  for (; optind < argc; ++optind)
    err |= touch (argv[optind]);
  exit (err);
}
