/* cat -- concatenate files and print on the standard output */

#include <config.h>
#include <stdio.h>
#include <fcntl.h>
#include <unistd.h>

#include "system.h"

/* Plain copy of INPUT_DESC to standard output. */
static int
simple_cat (int input_desc, char *buf, size_t bufsize)
{
  ssize_t n_read;

  for (;;)
    {
      n_read = read (input_desc, buf, bufsize);
      if (n_read < 0)
        return 0;
      if (n_read == 0)
        return 1;
      if (write (STDOUT_FILENO, buf, n_read) != n_read)
        return 0;
    }
}

int
main (int argc, char **argv)
{
  char buf[BUFSIZ];
  int ok = 1;
  int argind;

  for (argind = 1; argind < argc; argind++)
    {
      char const *infile = argv[argind];
      int input_desc = open (infile, O_RDONLY);

      if (input_desc < 0)
        {
          error (0, errno, "%s", infile);
          ok = 0;
          continue;
        }
      ok &= simple_cat (input_desc, buf, sizeof buf);
      if (close (input_desc) < 0)
        {
          error (0, errno, "%s", infile);
          ok = 0;
        }
    }
  return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
